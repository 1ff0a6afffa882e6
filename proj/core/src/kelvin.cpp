#include "deepwave/kelvin.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace deepwave::kelvin {

namespace {

constexpr double fixed_point_tol = 1e-12;
constexpr int fixed_point_max_iter = 100;

Point lift(const Vec& horizontal, double vertical) {
  const auto m = horizontal.size();
  Point x(m + 1);
  x.head(m) = horizontal;
  x(m) = vertical;
  return x;
}

// Unit directions on the lower half-sphere, at least `margin` radians below
// the horizontal plane.
std::vector<Vec> lower_directions(int n, int samples, double margin) {
  std::vector<Vec> dirs;
  const double pi = std::numbers::pi;
  if (n == 2) {
    for (int i = 0; i < samples; ++i) {
      const double t = samples == 1 ? 0.5 : static_cast<double>(i) / (samples - 1);
      const double theta = -pi + margin + t * (pi - 2.0 * margin);
      Vec d(2);
      d << std::cos(theta), std::sin(theta);
      dirs.push_back(d);
    }
    return dirs;
  }
  const int rings = std::max(2, samples / 3);
  const int azimuths = std::max(4, samples);
  for (int i = 0; i < rings; ++i) {
    // polar angle from -e_y in (0, pi/2 - margin]
    const double beta = (0.5 * pi - margin) * (i + 1.0) / rings;
    for (int j = 0; j < azimuths; ++j) {
      const double psi = 2.0 * pi * (j + 0.5 * (i % 2)) / azimuths;
      Vec d(3);
      d << std::sin(beta) * std::cos(psi), std::sin(beta) * std::sin(psi), -std::cos(beta);
      dirs.push_back(d);
    }
  }
  return dirs;
}

Eigen::RowVectorXd harmonic_basis_row(const Point& x, bool quadratic) {
  const auto n = x.size();
  Eigen::RowVectorXd row(quadratic ? (n == 2 ? 4 : 8) : n);
  for (Eigen::Index i = 0; i < n; ++i) row(i) = x(i);
  if (!quadratic) return row;
  if (n == 2) {
    row(2) = x(0) * x(0) - x(1) * x(1);
    row(3) = x(0) * x(1);
  } else {
    row(3) = x(0) * x(0) - x(2) * x(2);
    row(4) = x(1) * x(1) - x(2) * x(2);
    row(5) = x(0) * x(1);
    row(6) = x(0) * x(2);
    row(7) = x(1) * x(2);
  }
  return row;
}

}  // namespace

Point kelvin_point(const Point& x) {
  const double r2 = x.squaredNorm();
  if (r2 == 0.0) {
    throw Error(ErrorCode::singularity, "Kelvin inversion of the origin");
  }
  return x / r2;
}

KelvinPotential::KelvinPotential(FieldPtr source) : source_(std::move(source)) {
  if (!source_) throw Error(ErrorCode::invalid_argument, "null source field");
}

double KelvinPotential::value(const Point& xc) const {
  const int n = dim();
  const double r2 = xc.squaredNorm();
  const Point x = kelvin_point(xc);
  return std::pow(r2, -0.5 * (n - 2)) * source_->value(x);
}

Vec KelvinPotential::gradient(const Point& xc) const {
  const int n = dim();
  const double r2 = xc.squaredNorm();
  const Point x = kelvin_point(xc);
  const double scale = std::pow(r2, -0.5 * (n - 2));
  const Vec g = source_->gradient(x);
  // D T(xc) = (I - 2 xc xc^T / |xc|^2) / |xc|^2 is symmetric.
  const Vec reflected = (g - (2.0 * xc.dot(g) / r2) * xc) / r2;
  Vec out = scale * reflected;
  if (n != 2) {
    out -= (n - 2) * scale / r2 * source_->value(x) * xc;
  }
  return out;
}

std::vector<Point> KelvinPotential::singularities() const {
  std::vector<Point> out{Point::Zero(dim())};
  for (const auto& s : source_->singularities()) {
    if (s.squaredNorm() > 0.0) out.push_back(kelvin_point(s));
  }
  return out;
}

FieldPtr kelvin_potential(FieldPtr source) {
  return std::make_shared<KelvinPotential>(std::move(source));
}

TransformedSurface::TransformedSurface(SurfacePtr surface, double delta)
    : surface_(std::move(surface)), delta_(delta) {
  if (!surface_) throw Error(ErrorCode::invalid_argument, "null surface");
  if (!(delta_ > 0.0 && delta_ < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "patch radius must lie in (0, 1)");
  }
}

double TransformedSurface::eta_at_inverse(const Vec& xb) const {
  const double r2 = xb.squaredNorm();
  if (r2 == 0.0) return 0.0;
  const Vec xh = xb / r2;
  if (xh.norm() > surface_->extent()) {
    throw Error(ErrorCode::out_of_range,
                "transformed point maps beyond the sampled surface window");
  }
  return surface_->eta(xh);
}

double TransformedSurface::squared_eta_term(const Vec& xb) const {
  const double e = eta_at_inverse(xb);
  return xb.squaredNorm() * e * e;
}

Vec TransformedSurface::intermediate(const Vec& xc) const {
  if (xc.size() != dim() - 1) {
    throw Error(ErrorCode::dimension_mismatch, "patch coordinate has wrong dimension");
  }
  if (xc.norm() >= delta_) {
    throw Error(ErrorCode::out_of_range, "point lies outside the transformed patch");
  }
  if (xc.squaredNorm() == 0.0) return xc;
  Vec xb = xc;
  constexpr double damping = 0.5;
  for (int it = 0; it < fixed_point_max_iter; ++it) {
    const Vec target = xc * (1.0 + squared_eta_term(xb));
    const Vec next = damping * target + (1.0 - damping) * xb;
    const double step = (next - xb).norm();
    xb = next;
    if (step <= fixed_point_tol * std::max(1e-300, xc.norm())) {
      const Vec residual = xc - xb / (1.0 + squared_eta_term(xb));
      if (residual.norm() <= 1e-10 * xc.norm()) return xb;
    }
  }
  throw Error(ErrorCode::non_convergence,
              "transformed-surface inversion did not converge; use a smaller patch radius");
}

double TransformedSurface::height(const Vec& xc) const {
  const Vec xb = intermediate(xc);
  const double r2 = xb.squaredNorm();
  if (r2 == 0.0) return 0.0;
  const double e = eta_at_inverse(xb);
  return r2 * e / (1.0 + r2 * e * e);
}

Point TransformedSurface::point(const Vec& xc) const { return lift(xc, height(xc)); }

Point TransformedSurface::preimage(const Vec& xc) const {
  return kelvin_point(point(xc));
}

bool TransformedSurface::on_patch(const Point& xc, double tol) const {
  const int n = dim();
  const Vec h = xc.head(n - 1);
  if (h.norm() >= delta_) return false;
  return std::abs(xc(n - 1) - height(h)) <= tol * (1.0 + xc.norm());
}

TransformedSurface transformed_surface(SurfacePtr eta, double delta) {
  return TransformedSurface(std::move(eta), delta);
}

Vec transformed_normal(const Point& x, const Vec& normal) {
  if (std::abs(normal.norm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::non_unit_normal, "normal must have unit length");
  }
  const double r2 = x.squaredNorm();
  if (r2 == 0.0) throw Error(ErrorCode::singularity, "normal at the origin");
  return normal - (2.0 * normal.dot(x) / r2) * x;
}

RobinEntry robin_coefficients(const Point& x, const Vec& normal,
                              const WaveParams& params) {
  const int n = params.n;
  require_point_dimension(x, n, "surface point");
  require_point_dimension(normal, n, "surface normal");
  if (std::abs(normal.norm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::non_unit_normal, "normal must have unit length");
  }
  RobinEntry e;
  e.alpha = -(n - 2) * x.dot(normal);
  e.source = std::pow(x.squaredNorm(), 0.5 * n) * params.c.dot(normal);
  return e;
}

RobinData::RobinData(const TransformedSurface& surface, WaveParams params, int sign)
    : surface_(surface), params_(std::move(params)), sign_(sign) {}

RobinEntry RobinData::entry(const Vec& xc) const {
  if (xc.squaredNorm() == 0.0) return {};
  const int n = surface_.dim();
  const Point x = surface_.preimage(xc);
  const Vec normal = surface_.physical().normal(x.head(n - 1));
  return robin_coefficients(x, normal, params_);
}

double RobinData::alpha(const Vec& xc) const { return entry(xc).alpha; }
double RobinData::source(const Vec& xc) const { return entry(xc).source; }

RobinData robin_data(const TransformedSurface& surface, const WaveParams& params) {
  const int n = surface.dim();
  if (params.n != n) {
    throw Error(ErrorCode::dimension_mismatch, "surface and parameters differ in dimension");
  }
  Vec probe = Vec::Zero(n - 1);
  probe(0) = 0.5 * surface.delta();
  const Point xc = surface.point(probe);
  const Point x = kelvin_point(xc);
  const Vec reflected = transformed_normal(x, surface.physical().normal(x.head(n - 1)));
  const Point stepped = xc + (1e-3 * surface.delta()) * reflected;
  const Point back = kelvin_point(stepped);
  // A reflected normal pointing into the transformed fluid lands back inside
  // the physical fluid.
  const int sign = surface.physical().below(back) ? -1 : 1;
  return RobinData(surface, params, sign);
}

double robin_residual(const HarmonicField& phi_check,
                      const TransformedSurface& surface, const RobinData& data,
                      const Point& xc) {
  const int n = surface.dim();
  require_point_dimension(xc, n, "patch point");
  if (xc.squaredNorm() == 0.0) {
    throw Error(ErrorCode::singularity, "Robin residual is evaluated away from the origin");
  }
  if (!surface.on_patch(xc)) {
    throw Error(ErrorCode::out_of_range, "point is not on the transformed surface patch");
  }
  const Point x = kelvin_point(xc);
  const Vec normal = surface.physical().normal(x.head(n - 1));
  const Vec outward = data.sign() * transformed_normal(x, normal);
  const Vec xh = xc.head(n - 1);
  const double dn = phi_check.gradient(xc).dot(outward);
  const double value = phi_check.value(xc);
  return std::abs(dn + data.sign() * (data.alpha(xh) * value - data.source(xh)));
}

DipoleEstimate extract_dipole_kelvin(const HarmonicField& phi_check,
                                     const KelvinFitOptions& options) {
  const int n = phi_check.dim();
  if (options.radii.empty()) {
    throw Error(ErrorCode::invalid_argument, "Kelvin fit needs at least one radius");
  }
  const std::vector<Vec> dirs = lower_directions(n, options.angular_samples,
                                                 options.angle_margin);
  std::vector<Point> points;
  for (double rho : options.radii) {
    if (!(rho > 0.0)) throw Error(ErrorCode::invalid_argument, "fit radii must be positive");
    for (const Vec& d : dirs) {
      Point p = rho * d;
      if (options.inside && !options.inside(p)) continue;
      points.push_back(p);
    }
  }
  const int linear_terms = n;
  const int quad_terms = options.quadratic ? (n == 2 ? 2 : 5) : 0;
  const int cols = linear_terms + quad_terms;
  const auto rows = static_cast<Eigen::Index>(points.size());
  if (rows < cols) {
    throw Error(ErrorCode::degenerate_fit, "too few Kelvin samples for the fit");
  }
  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Point& p = points[static_cast<std::size_t>(i)];
    const double w = std::sqrt(1.0 / p.norm());
    design.row(i) = w * harmonic_basis_row(p, options.quadratic);
    rhs(i) = w * phi_check.value(p);
  }
  // Scale columns so the rank test is insensitive to the sample radius.
  Eigen::VectorXd col_scale = design.colwise().norm().transpose();
  for (int j = 0; j < cols; ++j) {
    if (col_scale(j) == 0.0) {
      throw Error(ErrorCode::degenerate_fit, "Kelvin samples do not span the model");
    }
    design.col(j) /= col_scale(j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) < 1e-10 * sv(0)) {
    throw Error(ErrorCode::degenerate_fit, "Kelvin samples are degenerate (collinear)");
  }
  Eigen::VectorXd coeff = svd.solve(rhs);
  const double residual = (design * coeff - rhs).norm() / std::sqrt(static_cast<double>(rows));
  coeff = coeff.cwiseQuotient(col_scale);
  Vec b = coeff.head(n);
  return make_dipole_estimate(b, DipoleMethod::kelvin, residual);
}

}  // namespace deepwave::kelvin
