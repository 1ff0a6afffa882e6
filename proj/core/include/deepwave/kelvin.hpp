#pragma once

#include "deepwave/core_types.hpp"
#include "deepwave/harmonic_oracle.hpp"
#include "deepwave/surface_graph.hpp"

#include <functional>
#include <vector>

namespace deepwave::kelvin {

/// T(x) = x / |x|^2. T is an involution away from the origin.
Point kelvin_point(const Point& x);

/// phi_check(xc) = |xc|^{-(n-2)} phi(xc / |xc|^2). Harmonic wherever the
/// source is; the origin (image of infinity) is excluded from evaluation.
class KelvinPotential final : public HarmonicField {
 public:
  explicit KelvinPotential(FieldPtr source);

  int dim() const override { return source_->dim(); }
  double value(const Point& xc) const override;
  Vec gradient(const Point& xc) const override;
  std::vector<Point> singularities() const override;

 private:
  FieldPtr source_;
};

FieldPtr kelvin_potential(FieldPtr source);

/// Image of the free surface near the origin: the graph yc = f(xc') for
/// |xc'| < delta, built through the intermediate variable
/// xb' = x' / |x'|^2 by inverting xc' = xb' / (1 + |xb'|^2 eta^2(xb'/|xb'|^2)).
class TransformedSurface {
 public:
  TransformedSurface(SurfacePtr surface, double delta);

  int dim() const { return surface_->dim(); }
  double delta() const { return delta_; }
  const SurfaceGraph& physical() const { return *surface_; }

  /// xb' for a given xc' (fixed-point inversion).
  Vec intermediate(const Vec& xc) const;
  /// f(xc'); f(0) = 0.
  double height(const Vec& xc) const;
  /// (xc', f(xc'))
  Point point(const Vec& xc) const;
  /// Physical surface point T((xc', f(xc'))).
  Point preimage(const Vec& xc) const;

  bool on_patch(const Point& xc, double tol = 1e-8) const;

 private:
  double squared_eta_term(const Vec& xb) const;
  double eta_at_inverse(const Vec& xb) const;

  SurfacePtr surface_;
  double delta_;
};

TransformedSurface transformed_surface(SurfacePtr eta, double delta = 0.2);

/// n - 2 (n . x) x / |x|^2: the reflection of the unit normal at x.
Vec transformed_normal(const Point& x, const Vec& normal);

struct RobinEntry {
  double alpha = 0.0;
  double source = 0.0;
};

/// alpha = -(n-2)(x . n), h = |x|^n (c . n) at the physical point x.
RobinEntry robin_coefficients(const Point& x, const Vec& normal,
                              const WaveParams& params);

/// Robin coefficients on the transformed patch, with the orientation sign
/// fixed so that the oriented normal points out of the transformed domain.
class RobinData {
 public:
  RobinData(const TransformedSurface& surface, WaveParams params, int sign);

  double alpha(const Vec& xc) const;
  double source(const Vec& xc) const;
  int sign() const { return sign_; }

 private:
  RobinEntry entry(const Vec& xc) const;

  TransformedSurface surface_;
  WaveParams params_;
  int sign_;
};

/// Determines the orientation sign by stepping along the reflected normal
/// from a patch point and testing which side of the physical surface the
/// preimage lands on.
RobinData robin_data(const TransformedSurface& surface, const WaveParams& params);

/// |d phi_check / d n_out + s (alpha phi_check - h)| at a patch point xc != 0.
double robin_residual(const HarmonicField& phi_check,
                      const TransformedSurface& surface, const RobinData& data,
                      const Point& xc);

struct KelvinFitOptions {
  std::vector<double> radii;        // transformed radii |xc| of the samples
  int angular_samples = 15;         // per radius (per polar ring in 3D)
  double angle_margin = 0.05;       // radians kept clear of the horizontal
  bool quadratic = false;           // add the harmonic quadratics to the model
  // Optional domain test on transformed points; samples failing it are dropped.
  std::function<bool(const Point&)> inside;
};

/// Weighted least-squares fit phi_check(xc) ~ b . xc (+ harmonic quadratics)
/// over samples on the lower half-sphere at the given radii, weight |xc|^{-1}.
/// Returns a = (b', 0) with b_y reported in `vertical`.
DipoleEstimate extract_dipole_kelvin(const HarmonicField& phi_check,
                                     const KelvinFitOptions& options);

}  // namespace deepwave::kelvin
