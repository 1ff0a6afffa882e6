#include "deepwave/harmonic_oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace deepwave::oracle {

namespace {

void require_nonzero(const Point& x) {
  if (x.squaredNorm() == 0.0) {
    throw Error(ErrorCode::singularity, "evaluation at the dipole singularity");
  }
}

std::complex<double> as_complex(const Point& x) { return {x(0), x(1)}; }

// For an analytic complex potential W(z), phi = Re W and
// grad phi = (Re W', -Im W').
Vec gradient_from_derivative(std::complex<double> dw) {
  Vec g(2);
  g << dw.real(), -dw.imag();
  return g;
}

}  // namespace

double dipole_value(const Vec& a, const Point& x, int n) {
  require_dimension(n);
  require_point_dimension(a, n, "dipole moment");
  require_point_dimension(x, n, "evaluation point");
  require_nonzero(x);
  const double r2 = x.squaredNorm();
  return a.dot(x) / std::pow(r2, 0.5 * n);
}

Vec dipole_gradient(const Vec& a, const Point& x, int n) {
  require_dimension(n);
  require_point_dimension(a, n, "dipole moment");
  require_point_dimension(x, n, "evaluation point");
  require_nonzero(x);
  const double r2 = x.squaredNorm();
  const double rn = std::pow(r2, 0.5 * n);
  return a / rn - (n * a.dot(x) / (rn * r2)) * x;
}

Dipole::Dipole(Vec a, Point center) : a_(std::move(a)), center_(std::move(center)) {
  require_dimension(static_cast<int>(a_.size()));
  require_point_dimension(center_, static_cast<int>(a_.size()), "dipole center");
}

Dipole::Dipole(Vec a) : Dipole(a, Point::Zero(a.size())) {}

double Dipole::value(const Point& x) const {
  return dipole_value(a_, x - center_, dim());
}

Vec Dipole::gradient(const Point& x) const {
  return dipole_gradient(a_, x - center_, dim());
}

FractionalMultipole2D::FractionalMultipole2D(std::complex<double> coefficient,
                                             double power, double height)
    : coefficient_(coefficient), power_(power), height_(height) {
  if (!(height_ > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "fractional multipole branch point must lie above y = 0");
  }
}

double FractionalMultipole2D::value(const Point& x) const {
  require_point_dimension(x, 2, "evaluation point");
  const std::complex<double> w =
      std::complex<double>(0.0, 1.0) * (as_complex(x) - std::complex<double>(0.0, height_));
  if (w.real() <= 0.0) {
    throw Error(ErrorCode::singularity, "point on the branch cut of the fractional multipole");
  }
  return (coefficient_ * std::pow(w, -power_)).real();
}

Vec FractionalMultipole2D::gradient(const Point& x) const {
  require_point_dimension(x, 2, "evaluation point");
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> w = i * (as_complex(x) - i * height_);
  if (w.real() <= 0.0) {
    throw Error(ErrorCode::singularity, "point on the branch cut of the fractional multipole");
  }
  const std::complex<double> dw = coefficient_ * (-power_) * std::pow(w, -power_ - 1.0) * i;
  return gradient_from_derivative(dw);
}

std::vector<Point> FractionalMultipole2D::singularities() const {
  Point p(2);
  p << 0.0, height_;
  return {p};
}

PeriodicDipoleImages::PeriodicDipoleImages(Vec a, double period)
    : moment_(a(0), a(1)), period_(period) {
  if (a.size() != 2) {
    throw Error(ErrorCode::dimension_mismatch, "periodic images are two-dimensional");
  }
  if (!(period_ > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "period must be positive");
  }
}

double PeriodicDipoleImages::value(const Point& x) const {
  const std::complex<double> z = as_complex(x);
  const double k = std::numbers::pi / period_;
  if (std::abs(z) < 1e-8 * period_) {
    // cot(kz) - 1/(kz) ~ -kz/3
    return (moment_ * (-k * k * z / 3.0)).real();
  }
  const std::complex<double> w = moment_ * (k / std::tan(k * z) - 1.0 / z);
  return w.real();
}

Vec PeriodicDipoleImages::gradient(const Point& x) const {
  const std::complex<double> z = as_complex(x);
  const double k = std::numbers::pi / period_;
  if (std::abs(z) < 1e-8 * period_) {
    return gradient_from_derivative(moment_ * (-k * k / 3.0));
  }
  const std::complex<double> s = std::sin(k * z);
  const std::complex<double> dw = moment_ * (-k * k / (s * s) + 1.0 / (z * z));
  return gradient_from_derivative(dw);
}

std::vector<Point> PeriodicDipoleImages::singularities() const {
  // Nearest images only; callers never evaluate a full period away.
  Point left(2), right(2);
  left << -period_, 0.0;
  right << period_, 0.0;
  return {left, right};
}

Superposition::Superposition(std::vector<std::pair<double, FieldPtr>> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw Error(ErrorCode::invalid_argument, "superposition needs at least one field");
  }
  n_ = terms_.front().second->dim();
  for (const auto& [w, f] : terms_) {
    if (f->dim() != n_) {
      throw Error(ErrorCode::dimension_mismatch, "superposed fields differ in dimension");
    }
  }
}

double Superposition::value(const Point& x) const {
  double v = 0.0;
  for (const auto& [w, f] : terms_) v += w * f->value(x);
  return v;
}

Vec Superposition::gradient(const Point& x) const {
  Vec g = Vec::Zero(n_);
  for (const auto& [w, f] : terms_) g += w * f->gradient(x);
  return g;
}

std::vector<Point> Superposition::singularities() const {
  std::vector<Point> all;
  for (const auto& [w, f] : terms_) {
    auto s = f->singularities();
    all.insert(all.end(), s.begin(), s.end());
  }
  return all;
}

FieldPtr superpose(std::vector<std::pair<double, FieldPtr>> terms) {
  return std::make_shared<Superposition>(std::move(terms));
}

FieldPtr boundary_compatible_field(const Vec& a, int n) {
  require_dimension(n);
  require_point_dimension(a, n, "dipole moment");
  if (a(n - 1) != 0.0) {
    throw Error(ErrorCode::invalid_argument,
                "boundary-compatible dipole must be horizontal");
  }
  return std::make_shared<Dipole>(a);
}

double distance_to_singularities(const HarmonicField& f, const Point& x) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : f.singularities()) d = std::min(d, (x - s).norm());
  return d;
}

double laplacian_residual(const HarmonicField& f, const Point& x, double h) {
  const int n = f.dim();
  require_point_dimension(x, n, "evaluation point");
  if (!(h > 0.0)) throw Error(ErrorCode::invalid_argument, "step must be positive");
  if (distance_to_singularities(f, x) <= h) {
    throw Error(ErrorCode::singularity, "finite-difference stencil touches a singularity");
  }
  const double centre = f.value(x);
  double lap = 0.0;
  for (int i = 0; i < n; ++i) {
    Point xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    lap += (f.value(xp) - 2.0 * centre + f.value(xm));
  }
  return lap / (h * h);
}

Vec fd_gradient(const HarmonicField& f, const Point& x, double h) {
  const int n = f.dim();
  Vec g(n);
  for (int i = 0; i < n; ++i) {
    Point xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    g(i) = (f.value(xp) - f.value(xm)) / (2.0 * h);
  }
  return g;
}

}  // namespace deepwave::oracle
