#pragma once

#include "deepwave/core_types.hpp"

#include <complex>
#include <memory>
#include <utility>
#include <vector>

namespace deepwave {

/// Evaluation contract for the velocity potential and its analytic stand-ins:
/// value, gradient, and the finite set of points where evaluation is
/// forbidden. Implementations are immutable and safe to share across threads.
class HarmonicField {
 public:
  virtual ~HarmonicField() = default;

  virtual int dim() const = 0;
  virtual double value(const Point& x) const = 0;
  virtual Vec gradient(const Point& x) const = 0;

  virtual std::vector<Point> singularities() const { return {}; }
};

using FieldPtr = std::shared_ptr<const HarmonicField>;

namespace oracle {

/// a . x / |x|^n
double dipole_value(const Vec& a, const Point& x, int n);

/// a / |x|^n - n (a . x) x / |x|^{n+2}
Vec dipole_gradient(const Vec& a, const Point& x, int n);

/// Dipole with moment `a` located at `center`.
class Dipole final : public HarmonicField {
 public:
  Dipole(Vec a, Point center);
  explicit Dipole(Vec a);

  int dim() const override { return static_cast<int>(a_.size()); }
  double value(const Point& x) const override;
  Vec gradient(const Point& x) const override;
  std::vector<Point> singularities() const override { return {center_}; }

  const Vec& moment() const { return a_; }

 private:
  Vec a_;
  Point center_;
};

class Constant final : public HarmonicField {
 public:
  Constant(double value, int n) : value_(value), n_(n) {}
  int dim() const override { return n_; }
  double value(const Point&) const override { return value_; }
  Vec gradient(const Point&) const override { return Vec::Zero(n_); }

 private:
  double value_;
  int n_;
};

/// b . x (uniform flow).
class Linear final : public HarmonicField {
 public:
  explicit Linear(Vec b) : b_(std::move(b)) {}
  int dim() const override { return static_cast<int>(b_.size()); }
  double value(const Point& x) const override { return b_.dot(x); }
  Vec gradient(const Point&) const override { return b_; }

 private:
  Vec b_;
};

/// |x|^2. Not harmonic (Laplacian 2n); the negative control for the
/// harmonicity and divergence-identity checks.
class RadialQuadratic final : public HarmonicField {
 public:
  explicit RadialQuadratic(int n) : n_(n) {}
  int dim() const override { return n_; }
  double value(const Point& x) const override { return x.squaredNorm(); }
  Vec gradient(const Point& x) const override { return 2.0 * x; }

 private:
  int n_;
};

/// Re(B * (i (z - i h))^{-p}) in 2D with z = x1 + i y: harmonic for y < h,
/// decaying like |x|^{-p}. With p = 1 + eps it is the faster-decaying
/// correction allowed on top of the dipole far field.
class FractionalMultipole2D final : public HarmonicField {
 public:
  FractionalMultipole2D(std::complex<double> coefficient, double power,
                        double height);
  int dim() const override { return 2; }
  double value(const Point& x) const override;
  Vec gradient(const Point& x) const override;
  std::vector<Point> singularities() const override;

 private:
  std::complex<double> coefficient_;
  double power_;
  double height_;
};

/// Sum of periodic images of a 2D dipole at the origin, excluding the
/// central one: Re(A (pi/P) cot(pi z / P) - A / z) with A = a_1 + i a_2.
/// Subtracting this from a field computed in a periodic box of period P
/// restores the isolated-dipole far field.
class PeriodicDipoleImages final : public HarmonicField {
 public:
  PeriodicDipoleImages(Vec a, double period);
  int dim() const override { return 2; }
  double value(const Point& x) const override;
  Vec gradient(const Point& x) const override;
  std::vector<Point> singularities() const override;

 private:
  std::complex<double> moment_;
  double period_;
};

/// Linear combination of fields; singularity set is the union.
class Superposition final : public HarmonicField {
 public:
  explicit Superposition(std::vector<std::pair<double, FieldPtr>> terms);
  int dim() const override { return n_; }
  double value(const Point& x) const override;
  Vec gradient(const Point& x) const override;
  std::vector<Point> singularities() const override;

 private:
  std::vector<std::pair<double, FieldPtr>> terms_;
  int n_;
};

FieldPtr superpose(std::vector<std::pair<double, FieldPtr>> terms);

/// Horizontal dipole at the origin on the half-space {y < 0}: vanishing
/// normal derivative on {y = 0} away from the origin, i.e. compatible with a
/// flat surface and c . n = 0.
FieldPtr boundary_compatible_field(const Vec& a, int n);

/// Centered second-order finite-difference Laplacian at x with step h.
/// Throws if the stencil comes within h of a singular point.
double laplacian_residual(const HarmonicField& f, const Point& x, double h);

/// Centered finite-difference gradient of f.value.
Vec fd_gradient(const HarmonicField& f, const Point& x, double h);

/// Distance from x to the nearest singular point of f (infinity if none).
double distance_to_singularities(const HarmonicField& f, const Point& x);

}  // namespace oracle
}  // namespace deepwave
