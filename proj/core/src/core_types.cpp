#include "deepwave/core_types.hpp"

#include <cmath>
#include <numbers>

namespace deepwave {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_gravity: return "invalid_gravity";
    case ErrorCode::negative_surface_tension: return "negative_surface_tension";
    case ErrorCode::zero_wave_speed: return "zero_wave_speed";
    case ErrorCode::vertical_wave_speed: return "vertical_wave_speed";
    case ErrorCode::invalid_dimension: return "invalid_dimension";
    case ErrorCode::invalid_decay_exponent: return "invalid_decay_exponent";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::singularity: return "singularity";
    case ErrorCode::non_unit_normal: return "non_unit_normal";
    case ErrorCode::non_convergence: return "non_convergence";
    case ErrorCode::out_of_range: return "out_of_range";
    case ErrorCode::degenerate_fit: return "degenerate_fit";
    case ErrorCode::self_intersection: return "self_intersection";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::io: return "io";
    case ErrorCode::data_integrity: return "data_integrity";
  }
  return "unknown";
}

std::string_view to_string(DipoleMethod method) {
  switch (method) {
    case DipoleMethod::kelvin: return "kelvin";
    case DipoleMethod::tail: return "tail";
    case DipoleMethod::energy: return "energy";
  }
  return "unknown";
}

void require_dimension(int n) {
  if (n != 2 && n != 3) {
    throw Error(ErrorCode::invalid_dimension,
                "dimension must be 2 or 3, got " + std::to_string(n));
  }
}

void require_point_dimension(const Vec& x, int n, std::string_view what) {
  if (x.size() != n) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(what) + ": expected " + std::to_string(n) +
                    " components, got " + std::to_string(x.size()));
  }
}

WaveParams make_params(double g, double sigma, const Vec& c, int n, double eps) {
  if (!(g > 0.0)) {
    throw Error(ErrorCode::invalid_gravity, "gravity must be positive");
  }
  if (!(sigma >= 0.0)) {
    throw Error(ErrorCode::negative_surface_tension,
                "surface tension must be non-negative");
  }
  require_dimension(n);
  require_point_dimension(c, n, "wave speed");
  if (c(n - 1) != 0.0) {
    throw Error(ErrorCode::vertical_wave_speed,
                "wave speed must have zero vertical component");
  }
  if (!(c.head(n - 1).norm() > 0.0)) {
    throw Error(ErrorCode::zero_wave_speed, "wave speed must be nonzero");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorCode::invalid_decay_exponent,
                "decay exponent must lie in (0, 1)");
  }
  return WaveParams{g, sigma, c, n, eps};
}

Vec horizontal_speed(double speed, int n) {
  require_dimension(n);
  Vec c = Vec::Zero(n);
  c(0) = speed;
  return c;
}

Vec vertical_unit(int n) {
  require_dimension(n);
  Vec e = Vec::Zero(n);
  e(n - 1) = 1.0;
  return e;
}

double kinetic_constant(int n) {
  require_dimension(n);
  return std::pow(std::numbers::pi, 0.5 * n) / (2.0 * std::tgamma(0.5 * n));
}

double angular_constant(int n) {
  require_dimension(n);
  return std::pow(std::numbers::pi, 0.5 * (n - 1)) / std::tgamma(0.5 * (n + 1));
}

DipoleEstimate make_dipole_estimate(const Vec& fitted, DipoleMethod method,
                                    double uncertainty) {
  const auto n = fitted.size();
  DipoleEstimate est;
  est.a = fitted;
  est.vertical = fitted(n - 1);
  est.a(n - 1) = 0.0;
  est.method = method;
  est.uncertainty = uncertainty;
  return est;
}

}  // namespace deepwave
