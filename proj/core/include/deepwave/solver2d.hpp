#pragma once

#include "deepwave/core_types.hpp"
#include "deepwave/spectral.hpp"

#include <Eigen/Core>

#include <functional>
#include <vector>

namespace deepwave::solver {

using spectral::Samples;

/// Steady 2D wave in conformal variables: the surface is
/// (xi + H[y](xi), y(xi)) for xi on the periodic grid xi_j = -L + j 2L/N.
/// The Bernoulli constant is zero, which fixes the level of y.
struct ConformalWave {
  WaveParams params;        // n = 2, c = (speed, 0)
  int N = 0;
  double L = 0.0;
  Samples y;                // even in xi
  double residual_max = 0.0;
  int iterations = 0;

  double speed() const { return params.speed(); }
  double spacing() const { return 2.0 * L / N; }
  double xi(int j) const { return -L + j * spacing(); }
};

struct SolverConfig {
  int N = 2048;
  double L = 200.0;
  double tolerance = 1e-10;     // max-norm of the Bernoulli residual
  int max_iterations = 40;
  // Continuation runs over 1 - c/c_min, geometrically from start_offset to
  // the target value in `continuation_steps` solves.
  int continuation_steps = 8;
  double start_offset = 1e-3;
  double amplitude_factor = 2.4;  // A = factor * sqrt(1 - c/c_min) / k*
};

void validate(const SolverConfig& config);

/// c(k) = sqrt(g/k + sigma k)
double dispersion_speed(double k, double g, double sigma);

/// (4 g sigma)^{1/4}
double minimum_speed(double g, double sigma);

/// Validated 2D parameters for a wave moving with `speed` along +x.
WaveParams wave_params(double g, double sigma, double speed);

/// Flat state y = 0 on the configured grid.
ConformalWave flat_wave(const WaveParams& params, int N, double L);

/// -A sech(mu xi) cos(k* xi) with k* = sqrt(g/sigma), mu from the linear
/// envelope decay rate and A = factor sqrt(1 - c/c_min) / k*.
Samples depression_guess(const WaveParams& params, int N, double L,
                         double amplitude_factor);

/// x_xi = 1 + H[y_xi]
Samples surface_x_derivative(const ConformalWave& wave);

/// Surface abscissa x(xi) = xi + H[y](xi).
Samples surface_abscissa(const ConformalWave& wave);

/// R = (c^2/2)(1/J - 1) + g y - sigma kappa. Throws self_intersection when
/// J <= 0 somewhere.
Samples bernoulli_residual(const WaveParams& params, const spectral::Transform& fft,
                           const Samples& y);
Samples bernoulli_residual(const ConformalWave& wave);

/// Exact linearization dR(y)[dy].
Samples linearized_residual(const WaveParams& params, const spectral::Transform& fft,
                            const Samples& y, const Samples& dy);

/// Newton iteration from `guess`, restricted to even y. Throws out_of_range
/// when c >= c_min, invalid_argument when sigma <= 0, and non_convergence
/// when the residual stalls above tolerance.
ConformalWave solve_wave(const WaveParams& params, const SolverConfig& config,
                         const Samples& guess);

/// Continuation from near c_min down to params.speed().
ConformalWave continuation(const WaveParams& params, const SolverConfig& config);

/// Re-solve on a larger box with the same grid spacing, starting from the
/// given wave padded with zeros.
ConformalWave extend_box(const ConformalWave& wave, double new_half_length,
                         const SolverConfig& config);

/// Lab-frame potential on the surface, c H[y].
Samples surface_potential(const ConformalWave& wave);

/// -(c^2/2) int H[y] y_xi dxi. Throws if the result is negative beyond
/// round-off, which would mean a sign-convention error.
double wave_energy(const ConformalWave& wave);

/// int y x_xi dxi over the period.
double wave_mass(const ConformalWave& wave);

/// Cosine coefficients a_k, k = 0 .. N/2 - 1, with
/// y(xi) = sum_k a_k cos(k pi xi / L); the Nyquist mode is dropped.
std::vector<double> cosine_coefficients(const ConformalWave& wave);

/// Largest |y(xi) - y(-xi)| over the grid.
double symmetry_defect(const Samples& y);

}  // namespace deepwave::solver
