#include "deepwave/identities.hpp"

#include "deepwave/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace deepwave::identities {

namespace {

constexpr int shell_panels = 8;
constexpr int bisection_steps = 200;

// Root of a monotone-ish bracketing function with f(lo) < 0 < f(hi).
template <typename F>
double bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(flo < 0.0 && fhi > 0.0) && !(flo > 0.0 && fhi < 0.0)) {
    throw Error(ErrorCode::out_of_range, "surface crossing is not bracketed");
  }
  for (int i = 0; i < bisection_steps && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Vec horizontal_of(const Point& x) { return x.head(x.size() - 1); }

Vec polar_point(double rho, double psi) {
  Vec xh(2);
  xh << rho * std::cos(psi), rho * std::sin(psi);
  return xh;
}

quad::Rule panels_rule(double a, double b, int order, double panel_width) {
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel_width)));
  return quad::composite(quad::uniform_breaks(a, b, panels), order);
}

// Symmetric breakpoints on [0, r]: panels of width `core`, growing by `growth`.
std::vector<double> radial_breaks(double r, double core, double growth) {
  std::vector<double> b{0.0};
  double w = core;
  while (b.back() < r) {
    b.push_back(std::min(r, b.back() + w));
    w *= growth;
  }
  return b;
}

// Horizontal quadrature of |x'| < w: interval in 2D, polar disc in 3D.
struct HorizontalRule {
  std::vector<Vec> points;
  std::vector<double> weights;
};

HorizontalRule horizontal_disc(int n, double w, int order, double panel_width) {
  HorizontalRule rule;
  if (n == 2) {
    const quad::Rule r = panels_rule(-w, w, order, panel_width);
    for (std::size_t i = 0; i < r.size(); ++i) {
      Vec xh(1);
      xh << r.nodes[i];
      rule.points.push_back(xh);
      rule.weights.push_back(r.weights[i]);
    }
    return rule;
  }
  const quad::Rule radial = panels_rule(0.0, w, order, panel_width);
  const int azimuths = 4 * order;
  for (int j = 0; j < azimuths; ++j) {
    const double psi = 2.0 * std::numbers::pi * j / azimuths;
    for (std::size_t i = 0; i < radial.size(); ++i) {
      rule.points.push_back(polar_point(radial.nodes[i], psi));
      rule.weights.push_back(radial.weights[i] * radial.nodes[i] * 2.0 * std::numbers::pi /
                             azimuths);
    }
  }
  return rule;
}

template <typename Integrand>
double integrate_shell(const ShellRule& rule, Integrand&& f) {
  quad::CompensatedSum sum;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    sum.add(rule.weights[i] * f(rule.points[i], rule.normals[i]));
  }
  return sum.value();
}

}  // namespace

Vec field_A(double phi, const Vec& grad, const Point& x, const WaveParams& params) {
  const int n = params.n;
  require_point_dimension(grad, n, "potential gradient");
  require_point_dimension(x, n, "evaluation point");
  const double k = params.speed_squared() / params.g;
  const Vec& c = params.c;
  const double dphi_dy = grad(n - 1);
  Vec a = (-k * dphi_dy + c.dot(x) + phi) * grad;
  a(n - 1) += k * (0.5 * grad.squaredNorm() - c.dot(grad));
  a += (k * dphi_dy - phi) * c;
  return a;
}

Vec field_C(const Vec& grad, const WaveParams& params) {
  const int n = params.n;
  require_point_dimension(grad, n, "potential gradient");
  const double k = params.speed_squared() / params.g;
  const double dphi_dy = grad(n - 1);
  Vec out = -k * dphi_dy * grad;
  out(n - 1) += k * (0.5 * grad.squaredNorm() - params.c.dot(grad));
  out += k * dphi_dy * params.c;
  return out;
}

namespace {

template <typename Field>
double fd_divergence(const HarmonicField& f, const Point& x, double h, Field&& field) {
  const int n = f.dim();
  require_point_dimension(x, n, "evaluation point");
  if (!(h > 0.0)) throw Error(ErrorCode::invalid_argument, "step must be positive");
  if (oracle::distance_to_singularities(f, x) <= h) {
    throw Error(ErrorCode::singularity, "finite-difference stencil touches a singularity");
  }
  double div = 0.0;
  for (int i = 0; i < n; ++i) {
    Point xp = x;
    Point xm = x;
    xp(i) += h;
    xm(i) -= h;
    div += (field(xp)(i) - field(xm)(i)) / (2.0 * h);
  }
  return div;
}

}  // namespace

double divergence_residual_A(const HarmonicField& f, const Point& x, double h,
                             const WaveParams& params) {
  if (f.dim() != params.n) {
    throw Error(ErrorCode::dimension_mismatch, "field and parameters differ in dimension");
  }
  const double div = fd_divergence(f, x, h, [&](const Point& p) {
    return field_A(f.value(p), f.gradient(p), p, params);
  });
  return std::abs(div - f.gradient(x).squaredNorm());
}

double divergence_residual_C(const HarmonicField& f, const Point& x, double h,
                             const WaveParams& params) {
  if (f.dim() != params.n) {
    throw Error(ErrorCode::dimension_mismatch, "field and parameters differ in dimension");
  }
  return std::abs(fd_divergence(f, x, h, [&](const Point& p) {
    return field_C(f.gradient(p), params);
  }));
}

double hemisphere_quadratic_integral(const Vec& c, const Vec& a, int n, int order) {
  require_dimension(n);
  require_point_dimension(c, n, "c");
  require_point_dimension(a, n, "a");
  if (order < 4) throw Error(ErrorCode::invalid_argument, "quadrature order must be >= 4");
  const quad::SphereRule rule = quad::lower_hemisphere(n, order);
  quad::CompensatedSum sum;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    sum.add(rule.weights[i] * c.dot(rule.points[i]) * a.dot(rule.points[i]));
  }
  return sum.value();
}

double hemisphere_quadratic_closed_form(const Vec& c, const Vec& a, int n) {
  require_dimension(n);
  return std::pow(std::numbers::pi, 0.5 * n) / (n * std::tgamma(0.5 * n)) * c.dot(a);
}

Vec hemisphere_position_integral(int n, int order) {
  require_dimension(n);
  if (order < 4) throw Error(ErrorCode::invalid_argument, "quadrature order must be >= 4");
  const quad::SphereRule rule = quad::lower_hemisphere(n, order);
  std::vector<quad::CompensatedSum> sums(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    for (int k = 0; k < n; ++k) {
      sums[static_cast<std::size_t>(k)].add(rule.weights[i] * rule.points[i](k));
    }
  }
  Vec out(n);
  for (int k = 0; k < n; ++k) out(k) = sums[static_cast<std::size_t>(k)].value();
  return out;
}

ShellRule fluid_shell(const SurfaceGraph& eta, double r, int order) {
  const int n = eta.dim();
  if (!(r > 0.0) || r > eta.extent()) {
    throw Error(ErrorCode::out_of_range, "shell radius outside the sampled surface");
  }
  ShellRule rule;
  if (n == 2) {
    // alpha measured from straight down; fluid where -r cos(alpha) < eta(r sin(alpha)).
    auto below = [&](double alpha) {
      Vec xh(1);
      xh << r * std::sin(alpha);
      return -r * std::cos(alpha) - eta.eta(xh);
    };
    const double right = bisect(below, 0.0, std::numbers::pi);
    const double left = bisect([&](double al) { return -below(al); }, -std::numbers::pi, 0.0);
    const quad::Rule q = quad::composite(quad::uniform_breaks(left, right, shell_panels), order);
    for (std::size_t i = 0; i < q.size(); ++i) {
      Vec u(2);
      u << std::sin(q.nodes[i]), -std::cos(q.nodes[i]);
      rule.points.push_back(r * u);
      rule.normals.push_back(u);
      rule.weights.push_back(r * q.weights[i]);
    }
    return rule;
  }
  const int azimuths = 4 * order;
  for (int j = 0; j < azimuths; ++j) {
    const double psi = 2.0 * std::numbers::pi * j / azimuths;
    auto below = [&](double beta) {
      return -r * std::cos(beta) - eta.eta(polar_point(r * std::sin(beta), psi));
    };
    const double top = bisect(below, 0.0, std::numbers::pi);
    const quad::Rule q = quad::composite(quad::uniform_breaks(0.0, top, 4), order);
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double sb = std::sin(q.nodes[i]);
      Vec u(3);
      u << sb * std::cos(psi), sb * std::sin(psi), -std::cos(q.nodes[i]);
      rule.points.push_back(r * u);
      rule.normals.push_back(u);
      rule.weights.push_back(r * r * sb * q.weights[i] * 2.0 * std::numbers::pi / azimuths);
    }
  }
  return rule;
}

ShellRule lower_shell(int n, double r, int order) {
  const quad::SphereRule unit = quad::lower_hemisphere(n, order);
  ShellRule rule;
  const double scale = std::pow(r, n - 1);
  for (std::size_t i = 0; i < unit.points.size(); ++i) {
    rule.points.push_back(r * unit.points[i]);
    rule.normals.push_back(unit.points[i]);
    rule.weights.push_back(scale * unit.weights[i]);
  }
  return rule;
}

ShellSeries make_shell_series(std::vector<double> radii, std::vector<double> values) {
  if (radii.size() != values.size() || radii.empty()) {
    throw Error(ErrorCode::invalid_argument, "shell series needs matching, non-empty arrays");
  }
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) {
      throw Error(ErrorCode::invalid_argument, "shell radii must be strictly increasing");
    }
  }
  ShellSeries s;
  s.radii = std::move(radii);
  s.values = std::move(values);
  const std::size_t m = s.radii.size();
  if (m >= 3) {
    Eigen::MatrixXd design(static_cast<Eigen::Index>(m), 2);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
      design(static_cast<Eigen::Index>(i), 0) = 1.0;
      design(static_cast<Eigen::Index>(i), 1) = 1.0 / s.radii[i];
      rhs(static_cast<Eigen::Index>(i)) = s.values[i];
    }
    s.limit_estimate = design.colPivHouseholderQr().solve(rhs)(0);
  } else {
    s.limit_estimate = s.values.back();
  }
  const std::size_t first = m >= 3 ? m - 3 : 0;
  double lo = s.values[first];
  double hi = s.values[first];
  for (std::size_t i = first; i < m; ++i) {
    lo = std::min(lo, s.values[i]);
    hi = std::max(hi, s.values[i]);
  }
  s.spread = hi - lo;
  return s;
}

double shell_flux_A(const HarmonicField& f, const SurfaceGraph& eta, double r,
                    const WaveParams& params, int order) {
  return integrate_shell(fluid_shell(eta, r, order), [&](const Point& x, const Vec& nrm) {
    return field_A(f.value(x), f.gradient(x), x, params).dot(nrm);
  });
}

double shell_flux_C(const HarmonicField& f, const SurfaceGraph& eta, double r,
                    const WaveParams& params, int order) {
  return integrate_shell(fluid_shell(eta, r, order), [&](const Point& x, const Vec& nrm) {
    return field_C(f.gradient(x), params).dot(nrm);
  });
}

Vec angular_momentum_shell(const HarmonicField& f, double r, int n, int order) {
  require_dimension(n);
  if (f.dim() != n) throw Error(ErrorCode::dimension_mismatch, "field dimension mismatch");
  const ShellRule rule = lower_shell(n, r, order);
  if (n == 2) {
    Vec out(1);
    out(0) = integrate_shell(rule, [&](const Point& x, const Vec&) {
      const Vec g = f.gradient(x);
      return x(0) * g(1) - x(1) * g(0);
    });
    return out;
  }
  Vec out(3);
  for (int k = 0; k < 3; ++k) {
    out(k) = integrate_shell(rule, [&](const Point& x, const Vec&) {
      const Eigen::Vector3d xv(x(0), x(1), x(2));
      const Vec g = f.gradient(x);
      const Eigen::Vector3d gv(g(0), g(1), g(2));
      return xv.cross(gv)(k);
    });
  }
  return out;
}

Vec angular_momentum_limit(const Vec& a, int n) {
  require_dimension(n);
  require_point_dimension(a, n, "dipole moment");
  if (n == 2) {
    Vec out(1);
    out(0) = angular_constant(2) * a(0);  // (a_1, a_2) x (0, 1) = a_1
    return out;
  }
  const Eigen::Vector3d av(a(0), a(1), a(2));
  const Eigen::Vector3d cross = av.cross(Eigen::Vector3d::UnitZ());  // vertical is the last axis
  Vec out(3);
  out << cross(0), cross(1), cross(2);
  return angular_constant(3) * out;
}

double kinetic_energy_volume(const HarmonicField& f, const SurfaceGraph& eta, double r,
                             const VolumeOptions& options) {
  const int n = eta.dim();
  if (f.dim() != n) throw Error(ErrorCode::dimension_mismatch, "field dimension mismatch");
  if (!(r > 0.0) || r > eta.extent()) {
    throw Error(ErrorCode::out_of_range, "volume radius outside the sampled surface");
  }
  // Horizontal radius rho = r sin(t) keeps the chord length r cos(t) smooth.
  const std::vector<double> rho_breaks = radial_breaks(r, options.core_width, options.growth);
  std::vector<double> t_breaks;
  for (double b : rho_breaks) t_breaks.push_back(std::asin(std::min(1.0, b / r)));
  if (n == 2) {
    std::vector<double> mirrored;
    for (auto it = t_breaks.rbegin(); it != t_breaks.rend(); ++it) {
      if (*it > 0.0) mirrored.push_back(-*it);
    }
    mirrored.insert(mirrored.end(), t_breaks.begin(), t_breaks.end());
    t_breaks = std::move(mirrored);
  }
  const quad::Rule outer = quad::composite(t_breaks, options.order);

  auto column = [&](const Vec& xh, double half_chord) {
    const double bottom = -half_chord;
    const double top = std::min(eta.eta(xh), half_chord);
    if (!(top > bottom)) return 0.0;
    const quad::Rule inner = quad::composite(
        quad::graded_breaks(bottom, top, options.vertical_panels, options.vertical_ratio),
        options.order);
    quad::CompensatedSum sum;
    Point x(n);
    x.head(n - 1) = xh;
    for (std::size_t k = 0; k < inner.size(); ++k) {
      x(n - 1) = inner.nodes[k];
      sum.add(inner.weights[k] * f.gradient(x).squaredNorm());
    }
    return sum.value();
  };

  quad::CompensatedSum total;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const double t = outer.nodes[i];
    const double rho = r * std::sin(t);
    const double half_chord = r * std::cos(t);
    const double dt = outer.weights[i] * r * std::cos(t);
    if (n == 2) {
      Vec xh(1);
      xh << rho;
      total.add(dt * column(xh, half_chord));
    } else {
      const double dpsi = 2.0 * std::numbers::pi / options.azimuths;
      for (int j = 0; j < options.azimuths; ++j) {
        const Vec xh = polar_point(rho, dpsi * j);
        total.add(dt * rho * dpsi * column(xh, half_chord));
      }
    }
  }
  return 0.5 * total.value();
}

double SurfacePatchQuadrature::area() const {
  double s = 0.0;
  for (const auto& node : nodes) s += node.weight * node.area;
  return s;
}

SurfacePatchQuadrature surface_patch(const SurfaceGraph& eta, double r, int order,
                                     double panel_width) {
  const int n = eta.dim();
  if (!(r > 0.0) || r > eta.extent()) {
    throw Error(ErrorCode::out_of_range, "patch radius outside the sampled surface");
  }
  SurfacePatchQuadrature patch;
  auto add_node = [&](const Vec& xh, double w) {
    patch.nodes.push_back({xh, w, eta.normal(xh), eta.area_element(xh)});
  };
  // Projected boundary: |x'|^2 + eta(x')^2 = r^2 along each horizontal ray.
  auto boundary_radius = [&](const Vec& dir) {
    return bisect(
        [&](double rho) {
          const Vec xh = rho * dir;
          const double e = eta.eta(xh);
          return rho * rho + e * e - r * r;
        },
        0.0, r);
  };
  if (n == 2) {
    Vec right(1), left(1);
    right << 1.0;
    left << -1.0;
    const double xr = boundary_radius(right);
    const double xl = -boundary_radius(left);
    const quad::Rule q = panels_rule(xl, xr, order, panel_width);
    for (std::size_t i = 0; i < q.size(); ++i) {
      Vec xh(1);
      xh << q.nodes[i];
      add_node(xh, q.weights[i]);
    }
    Vec pr(1), pl(1);
    pr << xr;
    pl << xl;
    patch.boundary.push_back({pr, right, 1.0});
    patch.boundary.push_back({pl, left, 1.0});
    return patch;
  }
  const int azimuths = 4 * order;
  const double dpsi = 2.0 * std::numbers::pi / azimuths;
  std::vector<double> rho_b(static_cast<std::size_t>(azimuths));
  for (int j = 0; j < azimuths; ++j) {
    rho_b[static_cast<std::size_t>(j)] = boundary_radius(polar_point(1.0, dpsi * j));
  }
  for (int j = 0; j < azimuths; ++j) {
    const double psi = dpsi * j;
    const double rb = rho_b[static_cast<std::size_t>(j)];
    const quad::Rule q = panels_rule(0.0, rb, order, panel_width);
    for (std::size_t i = 0; i < q.size(); ++i) {
      add_node(polar_point(q.nodes[i], psi), q.weights[i] * q.nodes[i] * dpsi);
    }
    const double next = rho_b[static_cast<std::size_t>((j + 1) % azimuths)];
    const double prev = rho_b[static_cast<std::size_t>((j + azimuths - 1) % azimuths)];
    const double drho = (next - prev) / (2.0 * dpsi);
    Vec out(2);
    out << rb * std::cos(psi) + drho * std::sin(psi), rb * std::sin(psi) - drho * std::cos(psi);
    const double ds = out.norm();
    patch.boundary.push_back({polar_point(rb, psi), out / ds, ds * dpsi});
  }
  return patch;
}

SurfaceEnergy kinetic_energy_surface(const std::function<double(const Vec&)>& phi_surface,
                                     const SurfaceGraph& eta, const WaveParams& params,
                                     double window) {
  const int n = params.n;
  if (eta.dim() != n) {
    throw Error(ErrorCode::dimension_mismatch, "surface and parameters differ in dimension");
  }
  const Vec c = params.c.head(n - 1);
  // (c . n) dS = -c' . grad eta dx'
  auto integrand = [&](const Vec& xh) {
    return 0.5 * phi_surface(xh) * -c.dot(eta.gradient(xh));
  };
  const SurfacePatchQuadrature patch = surface_patch(eta, window);
  quad::CompensatedSum sum;
  for (const auto& node : patch.nodes) sum.add(node.weight * integrand(node.x));
  SurfaceEnergy out;
  out.value = sum.value();
  // The integrand decays like |x'|^{-2n}; integrate that decay past the edge.
  for (const auto& b : patch.boundary) {
    out.remainder_estimate += std::abs(integrand(b.x)) * b.weight * b.x.norm() / (n + 1.0);
  }
  out.window_too_small = out.remainder_estimate > 1e-3 * std::abs(out.value) &&
                         out.remainder_estimate > 0.0;
  return out;
}

MassEstimate excess_mass(const SurfaceGraph& eta, double window,
                         const std::function<double(double)>& remainder) {
  const int n = eta.dim();
  if (!(window > 0.0) || window > eta.extent()) {
    throw Error(ErrorCode::out_of_range, "mass window outside the sampled surface");
  }
  auto estimate = [&](double w, double& inside, double& rem) {
    const HorizontalRule rule = horizontal_disc(n, w, 16, 1.0);
    quad::CompensatedSum sum;
    for (std::size_t i = 0; i < rule.points.size(); ++i) {
      sum.add(rule.weights[i] * eta.eta(rule.points[i]));
    }
    inside = sum.value();
    rem = remainder ? remainder(w) : 0.0;
    return inside + rem;
  };
  MassEstimate out;
  out.value = estimate(window, out.window_integral, out.remainder);
  double inside = 0.0;
  double rem = 0.0;
  out.uncertainty = std::abs(out.value - estimate(0.7 * window, inside, rem));
  return out;
}

double absolute_mass(const SurfaceGraph& eta, double window) {
  const int n = eta.dim();
  if (!(window > 0.0) || window > eta.extent()) {
    throw Error(ErrorCode::out_of_range, "mass window outside the sampled surface");
  }
  const HorizontalRule rule = horizontal_disc(n, window, 16, 0.5);
  quad::CompensatedSum sum;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    sum.add(rule.weights[i] * std::abs(eta.eta(rule.points[i])));
  }
  return sum.value();
}

BoundaryFlux surface_boundary_flux(const SurfaceGraph& eta, const WaveParams& params,
                                   double r) {
  const int n = params.n;
  if (eta.dim() != n) {
    throw Error(ErrorCode::dimension_mismatch, "surface and parameters differ in dimension");
  }
  const SurfacePatchQuadrature patch = surface_patch(eta, r);
  const Vec c = params.c.head(n - 1);
  const double k = params.speed_squared() * params.sigma / params.g;
  quad::CompensatedSum cap;
  quad::CompensatedSum adv;
  for (const auto& b : patch.boundary) {
    const Vec nrm = eta.normal(b.x);
    cap.add(b.weight * horizontal_of(nrm).dot(b.nu));
    adv.add(b.weight * eta.eta(b.x) * c.dot(b.x) * c.dot(b.nu));
  }
  return {k * cap.value(), adv.value()};
}

double verify_kinetic_identity(double kinetic_energy, const Vec& a, const Vec& c, int n) {
  require_dimension(n);
  if (!(kinetic_energy >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "kinetic energy must be non-negative");
  }
  const double ca = c.head(n - 1).dot(a.head(n - 1));
  const double scale = c.norm() * a.norm();
  const double floor = 1e-14 * std::max(1.0, scale * scale);
  return std::abs(kinetic_energy + kinetic_constant(n) * ca) /
         std::max(kinetic_energy, floor);
}

DipoleEstimate dipole_from_kinetic(double kinetic_energy, const Vec& c, int n) {
  require_dimension(n);
  require_point_dimension(c, n, "wave speed");
  const double speed = c.norm();
  if (!(speed > 0.0)) throw Error(ErrorCode::zero_wave_speed, "wave speed must be nonzero");
  const Vec a = (-kinetic_energy / (kinetic_constant(n) * speed)) * (c / speed);
  DipoleEstimate est = make_dipole_estimate(a, DipoleMethod::energy, 0.0);
  est.transverse_known = n == 2;
  return est;
}

}  // namespace deepwave::identities
