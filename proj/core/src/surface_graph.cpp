#include "deepwave/surface_graph.hpp"

#include <cmath>
#include <numbers>

namespace deepwave {

namespace {

constexpr double fd_step = 1e-4;

struct Hermite {
  double h00, h10, h01, h11;
};

Hermite hermite_basis(double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return {2 * t3 - 3 * t2 + 1, t3 - 2 * t2 + t, -2 * t3 + 3 * t2, t3 - t2};
}

}  // namespace

std::vector<SurfaceSample> SurfaceGraph::samples(double r1, double r2) const {
  std::vector<SurfaceSample> out;
  if (dim() == 2) {
    constexpr int per_side = 401;
    for (int side : {-1, 1}) {
      for (int i = 0; i < per_side; ++i) {
        Vec xh(1);
        xh(0) = side * (r1 + (r2 - r1) * i / (per_side - 1.0));
        out.push_back({xh, eta(xh)});
      }
    }
    return out;
  }
  constexpr int radii = 33;
  constexpr int angles = 64;
  for (int i = 0; i < radii; ++i) {
    const double r = r1 + (r2 - r1) * i / (radii - 1.0);
    for (int j = 0; j < angles; ++j) {
      const double psi = 2.0 * std::numbers::pi * j / angles;
      Vec xh(2);
      xh << r * std::cos(psi), r * std::sin(psi);
      out.push_back({xh, eta(xh)});
    }
  }
  return out;
}

Vec SurfaceGraph::normal(const Vec& xh) const {
  const int n = dim();
  const Vec grad = gradient(xh);
  Vec nrm(n);
  nrm.head(n - 1) = -grad;
  nrm(n - 1) = 1.0;
  return nrm / std::sqrt(1.0 + grad.squaredNorm());
}

double SurfaceGraph::area_element(const Vec& xh) const {
  return std::sqrt(1.0 + gradient(xh).squaredNorm());
}

double SurfaceGraph::normal_divergence(const Vec& xh) const {
  const Vec grad = gradient(xh);
  const HorizontalHessian hess = hessian(xh);
  const double w = std::sqrt(1.0 + grad.squaredNorm());
  const double quad = grad.dot(hess * grad);
  return -(hess.trace() / w - quad / (w * w * w));
}

bool SurfaceGraph::below(const Point& x) const {
  const int n = dim();
  return x(n - 1) < eta(x.head(n - 1));
}

Point SurfaceGraph::lift(const Vec& xh) const {
  const int n = dim();
  Point x(n);
  x.head(n - 1) = xh;
  x(n - 1) = eta(xh);
  return x;
}

FlatSurface::FlatSurface(int n) : n_(n) { require_dimension(n); }

AnalyticSurface::AnalyticSurface(int n, ValueFn value, GradientFn gradient,
                                 HessianFn hessian)
    : n_(n), value_(std::move(value)), gradient_(std::move(gradient)),
      hessian_(std::move(hessian)) {
  require_dimension(n);
  if (!value_) throw Error(ErrorCode::invalid_argument, "surface needs a value callable");
}

Vec AnalyticSurface::gradient(const Vec& xh) const {
  if (gradient_) return gradient_(xh);
  Vec g(n_ - 1);
  for (int i = 0; i < n_ - 1; ++i) {
    Vec p = xh, m = xh;
    p(i) += fd_step;
    m(i) -= fd_step;
    g(i) = (value_(p) - value_(m)) / (2 * fd_step);
  }
  return g;
}

HorizontalHessian AnalyticSurface::hessian(const Vec& xh) const {
  if (hessian_) return hessian_(xh);
  HorizontalHessian h(n_ - 1, n_ - 1);
  for (int i = 0; i < n_ - 1; ++i) {
    Vec p = xh, m = xh;
    p(i) += fd_step;
    m(i) -= fd_step;
    const Vec col = (gradient(p) - gradient(m)) / (2 * fd_step);
    h.col(i) = col;
  }
  return 0.5 * (h + h.transpose());
}

SampledSurface::SampledSurface(double x0, double h, std::vector<double> eta,
                               std::vector<double> slope,
                               std::vector<double> curvature, double period)
    : x0_(x0), h_(h), eta_(std::move(eta)), slope_(std::move(slope)),
      curvature_(std::move(curvature)), period_(period) {
  if (eta_.size() < 2 || slope_.size() != eta_.size() ||
      curvature_.size() != eta_.size()) {
    throw Error(ErrorCode::invalid_argument, "inconsistent surface sample arrays");
  }
  if (!(h_ > 0.0)) throw Error(ErrorCode::invalid_argument, "grid spacing must be positive");
  for (std::size_t i = 0; i < eta_.size(); ++i) {
    if (!std::isfinite(eta_[i]) || !std::isfinite(slope_[i]) ||
        !std::isfinite(curvature_[i])) {
      throw Error(ErrorCode::invalid_argument, "non-finite surface sample");
    }
  }
}

double SampledSurface::extent() const {
  const double left = -x0_;
  const double right = x0_ + h_ * static_cast<double>(eta_.size() - 1);
  return std::min(left, right);
}

std::size_t SampledSurface::locate(double x, double& t) const {
  const double s = (x - x0_) / h_;
  const double last = static_cast<double>(eta_.size() - 1);
  if (s < 0.0 || s > last) {
    throw Error(ErrorCode::out_of_range, "surface evaluation outside the sampled window");
  }
  auto i = static_cast<std::size_t>(std::floor(s));
  if (i >= eta_.size() - 1) i = eta_.size() - 2;
  t = s - static_cast<double>(i);
  return i;
}

double SampledSurface::eta(const Vec& xh) const {
  double t = 0.0;
  const std::size_t i = locate(xh(0), t);
  const Hermite b = hermite_basis(t);
  return b.h00 * eta_[i] + b.h10 * h_ * slope_[i] + b.h01 * eta_[i + 1] +
         b.h11 * h_ * slope_[i + 1];
}

Vec SampledSurface::gradient(const Vec& xh) const {
  double t = 0.0;
  const std::size_t i = locate(xh(0), t);
  const Hermite b = hermite_basis(t);
  Vec g(1);
  g(0) = b.h00 * slope_[i] + b.h10 * h_ * curvature_[i] + b.h01 * slope_[i + 1] +
         b.h11 * h_ * curvature_[i + 1];
  return g;
}

HorizontalHessian SampledSurface::hessian(const Vec& xh) const {
  double t = 0.0;
  const std::size_t i = locate(xh(0), t);
  HorizontalHessian h(1, 1);
  h(0, 0) = (1.0 - t) * curvature_[i] + t * curvature_[i + 1];
  return h;
}

std::vector<SurfaceSample> SampledSurface::samples(double r1, double r2) const {
  std::vector<SurfaceSample> out;
  for (std::size_t i = 0; i < eta_.size(); ++i) {
    const double x = x0_ + h_ * static_cast<double>(i);
    const double r = std::abs(x);
    if (r >= r1 && r <= r2) {
      Vec xh(1);
      xh(0) = x;
      out.push_back({xh, eta_[i]});
    }
  }
  return out;
}

double SampledSurface::derivative_consistency() const {
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < eta_.size(); ++i) {
    const double fd = (eta_[i + 1] - eta_[i - 1]) / (2 * h_);
    worst = std::max(worst, std::abs(fd - slope_[i]));
  }
  return worst;
}

std::shared_ptr<SampledSurface> sample_surface(const SurfaceGraph& source,
                                               double half_length, int nodes) {
  if (source.dim() != 2) {
    throw Error(ErrorCode::dimension_mismatch, "sampled surfaces are two-dimensional");
  }
  if (nodes < 2) throw Error(ErrorCode::invalid_argument, "need at least two nodes");
  const double h = 2.0 * half_length / (nodes - 1);
  std::vector<double> eta(nodes), slope(nodes), curv(nodes);
  for (int i = 0; i < nodes; ++i) {
    Vec xh(1);
    xh(0) = -half_length + h * i;
    eta[i] = source.eta(xh);
    slope[i] = source.gradient(xh)(0);
    curv[i] = source.hessian(xh)(0, 0);
  }
  return std::make_shared<SampledSurface>(-half_length, h, std::move(eta),
                                          std::move(slope), std::move(curv),
                                          source.period());
}

}  // namespace deepwave
