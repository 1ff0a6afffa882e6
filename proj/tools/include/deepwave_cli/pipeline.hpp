#pragma once

#include "deepwave/identities.hpp"
#include "deepwave/solver2d.hpp"
#include "deepwave/tail.hpp"
#include "deepwave_cli/config.hpp"
#include "deepwave_cli/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace deepwave::cli {

/// Least-squares slope of log |v| against log r.
double log_log_slope(const std::vector<double>& r, const std::vector<double>& v);

/// g, sigma from the config and c = speed_ratio * c_min along +x.
WaveParams configured_params(const PhysicsConfig& physics);

solver::ConformalWave solve_configured(const RunConfig& config);

// Oracle battery, grouped by topic. Random draws come from the seed only.
std::vector<Check> hemisphere_checks(const RunConfig& config);
std::vector<Check> divergence_checks(const RunConfig& config);
std::vector<Check> kelvin_checks(const RunConfig& config);
std::vector<Check> dispersion_checks(const RunConfig& config);
std::vector<Check> energy_oracle_checks(const RunConfig& config);
std::vector<Check> synthetic_tail_checks(const RunConfig& config);

/// Synthetic decaying surfaces: slopes of both surface boundary terms.
struct BoundarySlopes {
  std::string surface;
  int n = 2;
  double capillary = 0.0;
  double advective = 0.0;
};
std::vector<BoundarySlopes> synthetic_boundary_slopes(const RunConfig& config);

Report oracle_suite(const RunConfig& config);

struct WaveAnalysis {
  bool trivial = false;
  WaveParams params;
  double residual_max = 0.0;
  double kinetic_energy = 0.0;
  double ke_volume = 0.0;
  identities::SurfaceEnergy ke_surface;

  tail::TailFit exponent_fit;
  tail::TailFit coefficient_fit;
  DipoleEstimate energy;
  DipoleEstimate tail;
  DipoleEstimate kelvin;
  tail::CrossCheck cross;
  double kinetic_residual_kelvin = 0.0;
  double kinetic_residual_tail = 0.0;
  double robin_residual = 0.0;

  identities::MassEstimate mass;
  double absolute_mass = 0.0;
  double periodic_mass = 0.0;

  identities::ShellSeries angular;       // periodic images removed
  identities::ShellSeries angular_raw;
  double angular_target = 0.0;
  double angular_deviation = 0.0;        // max relative deviation from the target
  double angular_spread = 0.0;           // relative spread over the largest three radii
  identities::ShellSeries flux_A;

  std::vector<double> flux_radii;
  std::vector<double> capillary;
  std::vector<double> advective;
  double capillary_slope = 0.0;
  double advective_slope = 0.0;
  // int over B_r of |grad phi|^2 at r = volume_radius against
  // capillary - advective + flux of A through the shell.
  double energy_balance = 0.0;

  std::vector<double> farfield_radii;
  std::vector<double> farfield_remainder;
  double farfield_slope = 0.0;

  Series tail_profile;
};

/// The full identity pipeline on a solved wave. Evaluator failures propagate
/// as Error.
WaveAnalysis analyze_wave(const solver::ConformalWave& wave, const RunConfig& config);

/// Named checks for an analysis. A trivial wave yields zeros that pass.
std::vector<Check> verify_checks(const WaveAnalysis& analysis, const RunConfig& config);

/// analyze_wave + verify_checks + plot series; evaluator failures become
/// failed checks named after the stage.
Report verify_report(const solver::ConformalWave& wave, const RunConfig& config);

/// Largest |x| at which eta changes sign; nullopt when it never does.
std::optional<double> core_edge(const solver::ConformalWave& wave);

Report tail_fit_report(const solver::ConformalWave& wave, const RunConfig& config);

}  // namespace deepwave::cli
