#include "deepwave/wave_field.hpp"

#include <cmath>
#include <numbers>

namespace deepwave {

namespace {

using cplx = std::complex<double>;

constexpr int reseed_every = 32;
constexpr double decay_cutoff = 40.0;  // e^{-40} ~ 4e-18

}  // namespace

ConformalSeries::ConformalSeries(const solver::ConformalWave& wave)
    : speed_(wave.speed()), half_length_(wave.L),
      k0_(std::numbers::pi / wave.L), a_(solver::cosine_coefficients(wave)) {}

ConformalSeries::SurfacePoint ConformalSeries::surface(double xi) const {
  const double theta = k0_ * xi;
  const cplx step = std::polar(1.0, theta);
  cplx w(1.0, 0.0);
  SurfacePoint p{xi, 0.0, 1.0, 0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < a_.size(); ++k) {
    if (k % reseed_every == 0) w = std::polar(1.0, theta * static_cast<double>(k));
    const double kk = k0_ * static_cast<double>(k);
    const double cs = w.real();
    const double sn = w.imag();
    const double ak = a_[k];
    p.y += ak * cs;
    p.x += ak * sn;
    p.y_xi -= ak * kk * sn;
    p.x_xi += ak * kk * cs;
    p.y_xixi -= ak * kk * kk * cs;
    p.x_xixi -= ak * kk * kk * sn;
    w *= step;
  }
  return p;
}

double ConformalSeries::surface_preimage(double x) const {
  double xi = x;
  for (int it = 0; it < 60; ++it) {
    const SurfacePoint p = surface(xi);
    if (!(p.x_xi > 0.0)) {
      throw Error(ErrorCode::self_intersection, "surface is not a graph over x");
    }
    const double delta = (p.x - x) / p.x_xi;
    xi -= delta;
    if (std::abs(delta) <= 1e-14 * (1.0 + std::abs(x))) return xi;
  }
  throw Error(ErrorCode::non_convergence, "surface abscissa inversion did not converge");
}

ConformalSeries::InteriorPoint ConformalSeries::interior(cplx zeta) const {
  const cplx i(0.0, 1.0);
  const cplx step = std::exp(-i * k0_ * zeta);
  std::size_t terms = a_.size();
  if (zeta.imag() < 0.0) {
    const double limit = decay_cutoff / (k0_ * -zeta.imag()) + 1.0;
    if (limit < static_cast<double>(terms)) terms = static_cast<std::size_t>(limit);
  }
  cplx q(1.0, 0.0);
  cplx sum(0.0, 0.0);
  cplx dsum(0.0, 0.0);
  for (std::size_t k = 1; k < terms; ++k) {
    if (k % reseed_every == 0) {
      q = std::exp(-i * k0_ * static_cast<double>(k) * zeta);
    } else {
      q *= step;
    }
    sum += a_[k] * q;
    dsum += (a_[k] * k0_ * static_cast<double>(k)) * q;
  }
  InteriorPoint p;
  p.zeta = zeta;
  p.s = i * (a_.front() + sum);
  p.z_zeta = 1.0 + dsum;
  return p;
}

ConformalSeries::InteriorPoint ConformalSeries::preimage(const Point& x) const {
  require_point_dimension(x, 2, "evaluation point");
  if (std::abs(x(0)) > half_length_) {
    throw Error(ErrorCode::out_of_range, "point lies outside the computational box");
  }
  const cplx target(x(0), x(1));
  cplx zeta(x(0), x(1) - a_.front());
  for (int it = 0; it < 80; ++it) {
    const InteriorPoint p = interior(zeta);
    const cplx f = zeta + p.s - target;
    if (std::abs(f) <= 1e-13 * (1.0 + std::abs(target))) {
      if (zeta.imag() > 1e-9) {
        throw Error(ErrorCode::out_of_range, "point lies above the free surface");
      }
      return p;
    }
    cplx delta = f / p.z_zeta;
    const double size = std::abs(delta);
    if (size > 1.0) delta /= size;
    zeta -= delta;
    if (zeta.imag() > 1.0) {
      throw Error(ErrorCode::out_of_range, "point lies above the free surface");
    }
  }
  throw Error(ErrorCode::non_convergence,
              "conformal inversion did not converge (point too close to the surface?)");
}

WaveField::WaveField(std::shared_ptr<const ConformalSeries> series)
    : series_(std::move(series)) {
  if (!series_) throw Error(ErrorCode::invalid_argument, "null conformal series");
}

WaveField::WaveField(const solver::ConformalWave& wave)
    : WaveField(std::make_shared<ConformalSeries>(wave)) {}

double WaveField::value(const Point& x) const {
  const auto p = series_->preimage(x);
  return series_->speed() * p.s.real();
}

Vec WaveField::gradient(const Point& x) const {
  const auto p = series_->preimage(x);
  const cplx w = series_->speed() * (1.0 - 1.0 / p.z_zeta);
  Vec g(2);
  g << w.real(), -w.imag();
  return g;
}

WaveSurface::WaveSurface(std::shared_ptr<const ConformalSeries> series)
    : series_(std::move(series)) {
  if (!series_) throw Error(ErrorCode::invalid_argument, "null conformal series");
  const auto n = static_cast<int>(2 * series_->coefficients().size());
  const double l = series_->half_length();
  nodes_.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const auto p = series_->surface(-l + j * 2.0 * l / n);
    Vec xh(1);
    xh(0) = p.x;
    nodes_.push_back({xh, p.y});
  }
}

WaveSurface::WaveSurface(const solver::ConformalWave& wave)
    : WaveSurface(std::make_shared<ConformalSeries>(wave)) {}

double WaveSurface::abscissa(const Vec& xh) const {
  if (xh.size() != 1) {
    throw Error(ErrorCode::dimension_mismatch, "2D surfaces take one horizontal coordinate");
  }
  if (std::abs(xh(0)) > series_->half_length()) {
    throw Error(ErrorCode::out_of_range, "surface evaluation outside the computational box");
  }
  return series_->surface_preimage(xh(0));
}

ConformalSeries::SurfacePoint WaveSurface::at(const Vec& xh) const {
  return series_->surface(abscissa(xh));
}

double WaveSurface::eta(const Vec& xh) const { return at(xh).y; }

Vec WaveSurface::gradient(const Vec& xh) const {
  const auto p = at(xh);
  Vec g(1);
  g(0) = p.y_xi / p.x_xi;
  return g;
}

HorizontalHessian WaveSurface::hessian(const Vec& xh) const {
  const auto p = at(xh);
  HorizontalHessian h(1, 1);
  h(0, 0) = (p.y_xixi * p.x_xi - p.y_xi * p.x_xixi) / (p.x_xi * p.x_xi * p.x_xi);
  return h;
}

std::vector<SurfaceSample> WaveSurface::samples(double r1, double r2) const {
  std::vector<SurfaceSample> out;
  for (const auto& s : nodes_) {
    const double r = std::abs(s.x(0));
    if (r >= r1 && r <= r2) out.push_back(s);
  }
  return out;
}

double WaveSurface::potential(const Vec& xh) const {
  return series_->speed() * (xh(0) - abscissa(xh));
}

}  // namespace deepwave
