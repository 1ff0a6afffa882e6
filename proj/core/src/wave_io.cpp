#include "deepwave/wave_io.hpp"

#include "json.hpp"

#include <zlib.h>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace deepwave::io {

namespace {

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string canonical_payload(const solver::ConformalWave& wave) {
  std::string s;
  s.reserve(static_cast<std::size_t>(wave.N) * 26 + 128);
  s += std::to_string(wave_format_version) + ';' + real(wave.params.g) + ';' +
       real(wave.params.sigma) + ';' + real(wave.speed()) + ';' + std::to_string(wave.N) +
       ';' + real(wave.L) + ';' + real(wave.residual_max) + ';';
  for (Eigen::Index j = 0; j < wave.y.size(); ++j) {
    s += real(wave.y(j));
    s += ',';
  }
  return s;
}

[[noreturn]] void corrupt(const std::string& what) {
  throw Error(ErrorCode::data_integrity, "wave file: " + what);
}

}  // namespace

std::string wave_checksum(const solver::ConformalWave& wave) {
  const std::string payload = canonical_payload(wave);
  const uLong crc = crc32(crc32(0L, Z_NULL, 0),
                          reinterpret_cast<const Bytef*>(payload.data()),
                          static_cast<uInt>(payload.size()));
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

std::string wave_to_json(const solver::ConformalWave& wave) {
  std::ostringstream out;
  out << "{\n"
      << "  \"format_version\": " << wave_format_version << ",\n"
      << "  \"g\": " << real(wave.params.g) << ",\n"
      << "  \"sigma\": " << real(wave.params.sigma) << ",\n"
      << "  \"c\": " << real(wave.speed()) << ",\n"
      << "  \"N\": " << wave.N << ",\n"
      << "  \"L\": " << real(wave.L) << ",\n"
      << "  \"residual_max\": " << real(wave.residual_max) << ",\n"
      << "  \"checksum\": \"" << wave_checksum(wave) << "\",\n"
      << "  \"y_samples\": [";
  for (Eigen::Index j = 0; j < wave.y.size(); ++j) {
    out << (j % 4 == 0 ? "\n    " : " ") << real(wave.y(j));
    if (j + 1 < wave.y.size()) out << ',';
  }
  out << "\n  ]\n}\n";
  return out.str();
}

solver::ConformalWave wave_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    corrupt(std::string("malformed JSON (") + e.what() + ")");
  }
  solver::ConformalWave wave;
  std::string stored;
  try {
    if (doc.at("format_version").get<int>() != wave_format_version) {
      corrupt("unsupported format_version");
    }
    const double g = doc.at("g").get<double>();
    const double sigma = doc.at("sigma").get<double>();
    const double c = doc.at("c").get<double>();
    wave.N = doc.at("N").get<int>();
    wave.L = doc.at("L").get<double>();
    wave.residual_max = doc.at("residual_max").get<double>();
    stored = doc.at("checksum").get<std::string>();
    const auto& ys = doc.at("y_samples");
    if (!ys.is_array() || static_cast<int>(ys.size()) != wave.N) {
      corrupt("y_samples length does not match N");
    }
    wave.y.resize(wave.N);
    for (int j = 0; j < wave.N; ++j) wave.y(j) = ys[static_cast<std::size_t>(j)].get<double>();
    wave.params = solver::wave_params(g, sigma, c);
  } catch (const nlohmann::json::exception& e) {
    corrupt(std::string("missing or mistyped field (") + e.what() + ")");
  }
  if (wave_checksum(wave) != stored) corrupt("checksum mismatch");
  return wave;
}

void export_wave(const solver::ConformalWave& wave, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot open " + path.string() + " for writing");
  out << wave_to_json(wave);
  if (!out.flush()) throw Error(ErrorCode::io, "failed writing " + path.string());
}

solver::ConformalWave import_wave(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return wave_from_json(buf.str());
}

}  // namespace deepwave::io
