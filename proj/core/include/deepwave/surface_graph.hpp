#pragma once

#include "deepwave/core_types.hpp"

#include <functional>
#include <limits>
#include <memory>
#include <vector>

namespace deepwave {

using HorizontalHessian = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                        Eigen::ColMajor, 2, 2>;

struct SurfaceSample {
  Vec x;        // horizontal position, n - 1 components
  double eta;
};

/// The free surface y = eta(x') over R^{n-1}, with first and second
/// derivatives. `extent()` bounds the horizontal radius where data exists
/// (infinite for analytic surfaces); `period()` is nonzero when the data
/// comes from a periodic approximant.
class SurfaceGraph {
 public:
  virtual ~SurfaceGraph() = default;

  virtual int dim() const = 0;
  virtual double eta(const Vec& xh) const = 0;
  virtual Vec gradient(const Vec& xh) const = 0;
  virtual HorizontalHessian hessian(const Vec& xh) const = 0;

  virtual double extent() const { return std::numeric_limits<double>::infinity(); }
  virtual double period() const { return 0.0; }

  /// Samples with r1 <= |x'| <= r2, for fitting. The default draws a uniform
  /// grid (both half-lines in 2D, rings in 3D); data-backed surfaces return
  /// their own nodes.
  virtual std::vector<SurfaceSample> samples(double r1, double r2) const;

  /// Outward unit normal (-grad eta, 1) / sqrt(1 + |grad eta|^2).
  Vec normal(const Vec& xh) const;

  /// sqrt(1 + |grad eta|^2)
  double area_element(const Vec& xh) const;

  /// div n, the curvature entering the dynamic condition as -sigma div n.
  double normal_divergence(const Vec& xh) const;

  /// Whether (x', y) lies strictly below the surface.
  bool below(const Point& x) const;

  /// Point (x', eta(x')) in R^n.
  Point lift(const Vec& xh) const;
};

using SurfacePtr = std::shared_ptr<const SurfaceGraph>;

class FlatSurface final : public SurfaceGraph {
 public:
  explicit FlatSurface(int n);
  int dim() const override { return n_; }
  double eta(const Vec&) const override { return 0.0; }
  Vec gradient(const Vec&) const override { return Vec::Zero(n_ - 1); }
  HorizontalHessian hessian(const Vec&) const override {
    return HorizontalHessian::Zero(n_ - 1, n_ - 1);
  }

 private:
  int n_;
};

/// Surface given by closed-form callables. Missing derivative callables fall
/// back to centered finite differences of the value.
class AnalyticSurface final : public SurfaceGraph {
 public:
  using ValueFn = std::function<double(const Vec&)>;
  using GradientFn = std::function<Vec(const Vec&)>;
  using HessianFn = std::function<HorizontalHessian(const Vec&)>;

  AnalyticSurface(int n, ValueFn value, GradientFn gradient = {},
                  HessianFn hessian = {});

  int dim() const override { return n_; }
  double eta(const Vec& xh) const override { return value_(xh); }
  Vec gradient(const Vec& xh) const override;
  HorizontalHessian hessian(const Vec& xh) const override;

 private:
  int n_;
  ValueFn value_;
  GradientFn gradient_;
  HessianFn hessian_;
};

/// 2D surface sampled on a uniform grid x_j = x0 + j h with value, slope and
/// second-derivative samples; cubic Hermite interpolation between nodes.
class SampledSurface final : public SurfaceGraph {
 public:
  SampledSurface(double x0, double h, std::vector<double> eta,
                 std::vector<double> slope, std::vector<double> curvature,
                 double period = 0.0);

  int dim() const override { return 2; }
  double eta(const Vec& xh) const override;
  Vec gradient(const Vec& xh) const override;
  HorizontalHessian hessian(const Vec& xh) const override;
  double extent() const override;
  double period() const override { return period_; }
  std::vector<SurfaceSample> samples(double r1, double r2) const override;

  /// Largest deviation between the slope samples and centered differences
  /// of the value samples, over interior nodes.
  double derivative_consistency() const;

 private:
  std::size_t locate(double x, double& t) const;

  double x0_;
  double h_;
  std::vector<double> eta_;
  std::vector<double> slope_;
  std::vector<double> curvature_;
  double period_;
};

/// Build a SampledSurface from closed-form callables on [-half, half].
std::shared_ptr<SampledSurface> sample_surface(const SurfaceGraph& source,
                                               double half_length, int nodes);

}  // namespace deepwave
