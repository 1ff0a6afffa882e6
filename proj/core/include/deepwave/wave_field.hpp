#pragma once

#include "deepwave/harmonic_oracle.hpp"
#include "deepwave/solver2d.hpp"
#include "deepwave/surface_graph.hpp"

#include <complex>
#include <memory>
#include <vector>

namespace deepwave {

/// Trigonometric-series view of a solved conformal wave. With q = e^{-i k0 zeta}
/// (k0 = pi / L) the map into the fluid is z(zeta) = zeta + s(zeta),
/// s = i a_0 + i sum_k a_k q^k, analytic and bounded for Im zeta <= 0.
class ConformalSeries {
 public:
  explicit ConformalSeries(const solver::ConformalWave& wave);

  struct SurfacePoint {
    double x, y, x_xi, y_xi, x_xixi, y_xixi;
  };

  struct InteriorPoint {
    std::complex<double> zeta;
    std::complex<double> s;
    std::complex<double> z_zeta;
  };

  double speed() const { return speed_; }
  double half_length() const { return half_length_; }
  const std::vector<double>& coefficients() const { return a_; }

  /// Surface point and derivatives at real conformal abscissa xi.
  SurfacePoint surface(double xi) const;

  /// Conformal abscissa with x(xi) = x, by Newton.
  double surface_preimage(double x) const;

  /// s and z_zeta at complex zeta with Im zeta <= 0.
  InteriorPoint interior(std::complex<double> zeta) const;

  /// zeta with z(zeta) = x + i y, by Newton. Throws out_of_range for points
  /// outside the box or above the surface and non_convergence otherwise.
  InteriorPoint preimage(const Point& x) const;

 private:
  double speed_;
  double half_length_;
  double k0_;
  std::vector<double> a_;
};

/// Lab-frame velocity potential of a solved wave: phi = c Re s(zeta) and
/// u - i v = c (1 - 1 / z_zeta) at the preimage of each point.
class WaveField final : public HarmonicField {
 public:
  explicit WaveField(std::shared_ptr<const ConformalSeries> series);
  explicit WaveField(const solver::ConformalWave& wave);

  int dim() const override { return 2; }
  double value(const Point& x) const override;
  Vec gradient(const Point& x) const override;

  const ConformalSeries& series() const { return *series_; }

 private:
  std::shared_ptr<const ConformalSeries> series_;
};

/// The free surface of a solved wave as a graph over x, evaluated through the
/// trigonometric series. Samples are the conformal grid nodes.
class WaveSurface final : public SurfaceGraph {
 public:
  explicit WaveSurface(std::shared_ptr<const ConformalSeries> series);
  explicit WaveSurface(const solver::ConformalWave& wave);

  int dim() const override { return 2; }
  double eta(const Vec& xh) const override;
  Vec gradient(const Vec& xh) const override;
  HorizontalHessian hessian(const Vec& xh) const override;
  double extent() const override { return series_->half_length(); }
  double period() const override { return 2.0 * series_->half_length(); }
  std::vector<SurfaceSample> samples(double r1, double r2) const override;

  /// Lab-frame potential at the surface point above x.
  double potential(const Vec& xh) const;

 private:
  double abscissa(const Vec& xh) const;
  ConformalSeries::SurfacePoint at(const Vec& xh) const;

  std::shared_ptr<const ConformalSeries> series_;
  std::vector<SurfaceSample> nodes_;
};

}  // namespace deepwave
