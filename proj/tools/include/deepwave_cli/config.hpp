#pragma once

#include "deepwave/solver2d.hpp"
#include "deepwave/tail.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace deepwave::cli {

struct PhysicsConfig {
  double g = 1.0;
  double sigma = 1.0;
  double speed_ratio = 0.95;  // c / c_min
  double eps = 0.5;
};

struct Tolerances {
  double hemisphere = 1e-8;
  double ratio_low = 80.0;
  double ratio_high = 120.0;
  double involution = 1e-13;
  double kelvin_linear = 1e-12;
  double unit_normal = 1e-12;
  double robin = 1e-8;
  double round_trip = 1e-10;
  double dispersion = 1e-8;
  double newton = 1e-10;
  double energy_quadrature = 5e-3;   // relative
  double oracle_flux = 5e-3;         // relative
  double exponent = 0.05;            // relative to 2
  double dipole_agreement = 0.05;
  double kinetic_identity = 0.02;
  double mass_fraction = 0.01;
  double angular_limit = 0.05;
  double angular_spread = 0.02;
  double farfield_margin = 0.1;      // remainder slope must be below -2 - margin
};

struct VerifyConfig {
  tail::Window fit_window{30.0, 70.0};
  std::vector<double> shell_radii{30, 40, 50, 60, 70};
  std::vector<double> flux_radii{20, 30, 40, 50, 60, 70};
  std::vector<double> farfield_radii{30, 40, 50, 60, 70};
  std::vector<double> kelvin_radii{30, 40, 50, 60, 70};  // physical radii
  double mass_window = 70.0;
  double volume_radius = 70.0;
  int image_iterations = 4;
  int shell_order = 48;
};

struct OracleConfig {
  int fields_per_dimension = 5;
  int points_per_field = 20;
  int involution_samples = 1000;
};

struct RunConfig {
  PhysicsConfig physics;
  solver::SolverConfig solver;
  VerifyConfig verify;
  Tolerances tolerances;
  OracleConfig oracle;
  std::uint64_t seed = 20240601;
  std::string wave_input = "wave.json";
  std::string wave_output = "wave.json";
};

/// Every key with its default value.
nlohmann::json default_config_json();

/// Merges `patch` into `base` key by key; unknown keys throw invalid_argument.
void merge_config(nlohmann::json& base, const nlohmann::json& patch,
                  const std::string& where = "");

/// Applies "a.b=value"; value is read as JSON when it parses, else as a string.
void apply_override(nlohmann::json& config, const std::string& assignment);

/// Validates and converts. Throws invalid_argument for non-positive
/// tolerances, malformed windows or unsorted radii.
RunConfig parse_config(const nlohmann::json& config);

/// Defaults, then the file (if non-empty), then overrides, in order.
nlohmann::json load_config_json(const std::filesystem::path& file,
                                const std::vector<std::string>& overrides);

}  // namespace deepwave::cli
