#pragma once

#include "deepwave/core_types.hpp"
#include "deepwave/surface_graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace deepwave::tail {

/// (1 / (g |x'|^n)) (c . a - n (c . x')(a . x') / |x'|^2): the leading
/// far-field elevation for dipole moment a. `a` is an n-vector; only its
/// horizontal part enters.
double eta_tail_model(const Vec& xh, const Vec& a, const WaveParams& params);

/// 1/x^2, or its periodic image sum (pi/P)^2 / sin^2(pi x / P) when
/// period > 0.
double inverse_square_profile(double x, double period);

/// sum over images m of |x + m P|^{-p}; plain |x|^{-p} when period == 0.
double power_profile(double x, double p, double period);

struct FarField {
  double value;
  Vec gradient;
};

/// Dipole far field a . x / |x|^n and its gradient.
FarField phi_farfield_model(const Point& x, const Vec& a, int n);

struct Window {
  double r1;
  double r2;
};

/// [0.15 L, 0.35 L] for a box of half-length L.
Window default_window(double half_length);

struct TailFit {
  double exponent = 0.0;        // decay exponent p of |eta|
  double coefficient = 0.0;     // 2D: eta ~ coefficient / x^p (periodized when period > 0)
  std::vector<double> direction_exponents;  // 3D: per compass direction
  Window window{0.0, 0.0};
  double residual = 0.0;        // RMS of the fit residual
  std::size_t samples = 0;
  bool periodic = false;
};

/// Log-log least squares for the decay exponent of |eta| over the window.
/// 2D surfaces from a periodic box are fitted against the image sum of
/// |x|^{-p}. Throws degenerate_fit when eta changes sign in the window.
TailFit fit_decay_exponent(const SurfaceGraph& eta, Window window);

/// 2D: least-squares coefficient C with the exponent fixed at 2,
/// eta ~ C inverse_square_profile(x, period). `exponent` is reported as 2.
TailFit fit_tail_coefficient(const SurfaceGraph& eta, Window window);

/// Least squares of eta against eta_tail_model over the window. In 2D
/// a_1 = -g C / c_1; in 3D both horizontal components come from the angular
/// dependence (degenerate_fit if the samples cannot resolve them).
DipoleEstimate extract_dipole_tail(const SurfaceGraph& eta, const WaveParams& params,
                                   Window window);

/// Mean of eta_tail_model over the sphere |x'| = r in R^{n-1}:
/// -(c . a) / (g r^2) in 2D and -(c . a) / (2 g r^3) in 3D.
double model_angular_mean(const Vec& a, const WaveParams& params, double r);

/// The same mean by quadrature (brute-force cross-check).
double model_angular_mean_quadrature(const Vec& a, const WaveParams& params, double r,
                                     int order);

/// Integral of the tail model over |x'| > window.
double model_remainder(const Vec& a, const WaveParams& params, double window);

struct CrossCheck {
  double max_deviation = 0.0;   // max pairwise |a_i - a_j| / max(|a_i|, |a_j|)
  bool sign_ok = true;          // c . a < 0 for every nontrivial estimate
  std::optional<bool> tail_positive;
  std::vector<std::string> violations;
};

/// Compares dipole estimates. When an estimate only knows the component
/// along c, pairs involving it compare that component. Pass the 2D tail
/// coefficient to check its positivity.
CrossCheck crosscheck_dipole(const std::vector<DipoleEstimate>& estimates,
                             const WaveParams& params,
                             std::optional<double> tail_coefficient = std::nullopt);

}  // namespace deepwave::tail
