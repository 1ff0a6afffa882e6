#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <string_view>

namespace deepwave {

/// Points and vectors in R^n with n in {2, 3}. Fixed maximum size, so no heap
/// traffic in the inner quadrature loops.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;
using Point = Vec;

enum class ErrorCode {
  invalid_gravity,
  negative_surface_tension,
  zero_wave_speed,
  vertical_wave_speed,
  invalid_dimension,
  invalid_decay_exponent,
  dimension_mismatch,
  singularity,
  non_unit_normal,
  non_convergence,
  out_of_range,
  degenerate_fit,
  self_intersection,
  invalid_argument,
  io,
  data_integrity,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; the code distinguishes failure modes
/// so that callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Physical constants of a traveling solitary wave. Construct through
/// make_params(); the fields are public for reading but the invariants are
/// only checked there.
struct WaveParams {
  double g = 1.0;
  double sigma = 0.0;
  Vec c;        // (c', 0), |c'| > 0
  int n = 2;    // spatial dimension
  double eps = 0.5;

  double speed() const { return c.norm(); }
  double speed_squared() const { return c.squaredNorm(); }
};

WaveParams make_params(double g, double sigma, const Vec& c, int n, double eps);

/// Horizontal wave speed of magnitude `speed` along the first axis.
Vec horizontal_speed(double speed, int n);

/// Unit vector along the vertical (last) coordinate.
Vec vertical_unit(int n);

void require_dimension(int n);
void require_point_dimension(const Vec& x, int n, std::string_view what);

/// pi^{n/2} / (2 Gamma(n/2)): KE = -kinetic_constant(n) * (c . a).
double kinetic_constant(int n);

/// pi^{(n-1)/2} / Gamma((n+1)/2): limit of the angular-momentum shell flux
/// per unit (a x e_y).
double angular_constant(int n);

enum class DipoleMethod { kelvin, tail, energy };

std::string_view to_string(DipoleMethod method);

/// A dipole-moment estimate a = (a', 0). Estimators that fit a vertical
/// component keep it in `vertical` so that a_y = 0 can be checked rather than
/// assumed; `a` itself always has a zero last coordinate.
struct DipoleEstimate {
  Vec a;
  DipoleMethod method = DipoleMethod::energy;
  double uncertainty = 0.0;
  double vertical = 0.0;
  // The energy identity only fixes the component along c; in 3D the
  // transverse horizontal part is unknown.
  bool transverse_known = true;
};

DipoleEstimate make_dipole_estimate(const Vec& fitted, DipoleMethod method,
                                    double uncertainty);

}  // namespace deepwave
