#pragma once

#include "deepwave/solver2d.hpp"

#include <filesystem>
#include <string>

namespace deepwave::io {

inline constexpr int wave_format_version = 1;

/// JSON text of a wave: format_version, g, sigma, c, N, L, y_samples
/// (xi-ordered from -L), residual_max and a CRC-32 checksum over the
/// canonical payload. Reals are written with 17 significant digits.
std::string wave_to_json(const solver::ConformalWave& wave);

/// Inverse of wave_to_json. Throws data_integrity on malformed content or a
/// checksum mismatch.
solver::ConformalWave wave_from_json(const std::string& text);

/// Hex CRC-32 of the canonical payload.
std::string wave_checksum(const solver::ConformalWave& wave);

/// Throws io when the file cannot be written.
void export_wave(const solver::ConformalWave& wave, const std::filesystem::path& path);

/// Throws io when the file cannot be read.
solver::ConformalWave import_wave(const std::filesystem::path& path);

}  // namespace deepwave::io
