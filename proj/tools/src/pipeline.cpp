#include "deepwave_cli/pipeline.hpp"

#include "deepwave/harmonic_oracle.hpp"
#include "deepwave/kelvin.hpp"
#include "deepwave/spectral.hpp"
#include "deepwave/surface_graph.hpp"
#include "deepwave/wave_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace deepwave::cli {

namespace {

constexpr double pi = std::numbers::pi;

std::string dim_tag(int n) { return "n" + std::to_string(n); }

Vec unit_x(int n) {
  Vec v = Vec::Zero(n);
  v(0) = 1.0;
  return v;
}

Vec random_vector(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

Vec random_direction(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal;
  Vec v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = normal(rng);
  } while (v.norm() < 1e-3);
  return v / v.norm();
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

WaveParams oracle_params(const PhysicsConfig& physics, int n) {
  const double speed =
      physics.speed_ratio * solver::minimum_speed(physics.g, std::max(physics.sigma, 1e-300));
  return make_params(physics.g, physics.sigma, horizontal_speed(speed, n), n, physics.eps);
}

// Dipoles above y = 0 plus uniform flow and a constant (and in 2D a
// fractional multipole), so the lower half-space is free of singularities.
FieldPtr random_superposition(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::pair<double, FieldPtr>> terms;
  for (int k = 0; k < 2; ++k) {
    Point center = random_vector(rng, n, -1.5, 1.5);
    center(n - 1) = std::uniform_real_distribution<double>(0.3, 1.5)(rng);
    terms.emplace_back(1.0, std::make_shared<oracle::Dipole>(random_vector(rng, n, -1.0, 1.0), center));
  }
  terms.emplace_back(1.0, std::make_shared<oracle::Linear>(random_vector(rng, n, -1.0, 1.0)));
  terms.emplace_back(1.0, std::make_shared<oracle::Constant>(u(rng), n));
  if (n == 2) {
    terms.emplace_back(1.0, std::make_shared<oracle::FractionalMultipole2D>(
                                std::complex<double>(u(rng), u(rng)), 1.5, 0.5));
  }
  return oracle::superpose(std::move(terms));
}

Point random_fluid_point(std::mt19937_64& rng, const HarmonicField& f, int n) {
  for (;;) {
    Point x = random_vector(rng, n, -2.0, 2.0);
    x(n - 1) = std::uniform_real_distribution<double>(-2.0, -0.3)(rng);
    if (oracle::distance_to_singularities(f, x) > 0.5) return x;
  }
}

std::shared_ptr<AnalyticSurface> rational_surface(int n, double amplitude, double power) {
  return std::make_shared<AnalyticSurface>(
      n,
      [=](const Vec& xh) { return amplitude * std::pow(1.0 + xh.squaredNorm(), -power); },
      [=](const Vec& xh) -> Vec {
        return (-2.0 * power * amplitude * std::pow(1.0 + xh.squaredNorm(), -power - 1.0)) * xh;
      });
}

Series zip(const std::vector<double>& x, const std::vector<double>& y) {
  Series s;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) s.emplace_back(x[i], y[i]);
  return s;
}

double max_relative_deviation(const std::vector<double>& values, double target) {
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, std::abs(v - target) / std::abs(target));
  return worst;
}

double relative_spread(const identities::ShellSeries& s) {
  const auto m = s.values.size();
  if (m < 3) return 0.0;
  double scale = 0.0;
  for (std::size_t i = m - 3; i < m; ++i) scale = std::max(scale, std::abs(s.values[i]));
  return scale > 0.0 ? s.spread / scale : 0.0;
}

class StageError : public Error {
 public:
  StageError(std::string stage, const Error& e)
      : Error(e.code(), stage + ": " + e.what()), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

template <class F>
auto staged(const char* stage, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(stage, e);
  }
}

}  // namespace

double log_log_slope(const std::vector<double>& r, const std::vector<double>& v) {
  const auto m = std::min(r.size(), v.size());
  if (m < 2) throw Error(ErrorCode::degenerate_fit, "slope needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(r[i] > 0.0) || !(std::abs(v[i]) > 0.0))
      throw Error(ErrorCode::degenerate_fit, "slope needs positive radii and nonzero values");
    const double x = std::log(r[i]);
    const double y = std::log(std::abs(v[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double md = static_cast<double>(m);
  return (md * sxy - sx * sy) / (md * sxx - sx * sx);
}

WaveParams configured_params(const PhysicsConfig& physics) {
  if (!(physics.sigma > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "solitary waves need positive surface tension");
  }
  const double c_min = solver::minimum_speed(physics.g, physics.sigma);
  const double speed = physics.speed_ratio * c_min;
  if (physics.speed_ratio >= 1.0) {
    throw Error(ErrorCode::out_of_range,
                "speed_ratio " + format_real(physics.speed_ratio) +
                    " puts c at or above c_min; solitary waves need c < c_min");
  }
  WaveParams p = solver::wave_params(physics.g, physics.sigma, speed);
  p.eps = physics.eps;
  return p;
}

solver::ConformalWave solve_configured(const RunConfig& config) {
  return solver::continuation(configured_params(config.physics), config.solver);
}

std::vector<Check> hemisphere_checks(const RunConfig& config) {
  const double tol = config.tolerances.hemisphere;
  constexpr int order = 32;
  std::vector<Check> out;
  for (int n : {2, 3}) {
    const std::string tag = dim_tag(n);
    const Vec e = unit_x(n);
    const double expected = n == 2 ? pi / 2.0 : 2.0 * pi / 3.0;
    out.push_back(within("hemisphere_constant_" + tag,
                         identities::hemisphere_quadratic_integral(e, e, n, order), expected, tol));

    Vec c = Vec::Zero(n);
    Vec a = Vec::Zero(n);
    c(0) = 1.3;
    a(0) = -0.4;
    if (n == 3) {
      c(1) = 0.2;
      a(1) = 0.7;
    }
    out.push_back(within("hemisphere_quadratic_" + tag,
                         identities::hemisphere_quadratic_integral(c, a, n, order),
                         identities::hemisphere_quadratic_closed_form(c, a, n), tol));

    const Vec pos = identities::hemisphere_position_integral(n, order);
    for (int i = 0; i + 1 < n; ++i) {
      out.push_back(within("hemisphere_position_" + tag + "_x" + std::to_string(i + 1), pos(i),
                           0.0, tol));
    }
    out.push_back(within("hemisphere_position_" + tag + "_y", pos(n - 1),
                         -angular_constant(n), tol));
  }
  return out;
}

std::vector<Check> divergence_checks(const RunConfig& config) {
  const auto& t = config.tolerances;
  std::mt19937_64 rng(config.seed);
  std::vector<Check> out;
  for (int n : {2, 3}) {
    const WaveParams params = oracle_params(config.physics, n);
    for (int k = 0; k < config.oracle.fields_per_dimension; ++k) {
      const FieldPtr f = random_superposition(rng, n);
      double lo_a = std::numeric_limits<double>::infinity(), hi_a = 0.0;
      double lo_c = lo_a, hi_c = 0.0;
      for (int j = 0; j < config.oracle.points_per_field; ++j) {
        const Point x = random_fluid_point(rng, *f, n);
        const double ra = identities::divergence_residual_A(*f, x, 1e-2, params) /
                          identities::divergence_residual_A(*f, x, 1e-3, params);
        const double rc = identities::divergence_residual_C(*f, x, 1e-2, params) /
                          identities::divergence_residual_C(*f, x, 1e-3, params);
        lo_a = std::min(lo_a, ra);
        hi_a = std::max(hi_a, ra);
        lo_c = std::min(lo_c, rc);
        hi_c = std::max(hi_c, rc);
      }
      const std::string tag = "divergence_" + dim_tag(n) + "_field" + std::to_string(k + 1);
      out.push_back(at_least(tag + "_A_min_ratio", lo_a, t.ratio_low));
      out.push_back(at_most(tag + "_A_max_ratio", hi_a, t.ratio_high));
      out.push_back(at_least(tag + "_C_min_ratio", lo_c, t.ratio_low));
      out.push_back(at_most(tag + "_C_max_ratio", hi_c, t.ratio_high));
    }
  }
  return out;
}

std::vector<Check> kelvin_checks(const RunConfig& config) {
  const auto& t = config.tolerances;
  std::mt19937_64 rng(config.seed + 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Check> out;
  for (int n : {2, 3}) {
    const std::string tag = dim_tag(n);

    double involution = 0.0;
    double normals = 0.0;
    for (int i = 0; i < config.oracle.involution_samples; ++i) {
      const Point x = log_uniform(rng, 1e-3, 1e3) * random_direction(rng, n);
      involution = std::max(
          involution, (kelvin::kelvin_point(kelvin::kelvin_point(x)) - x).norm() / x.norm());
      const Vec nrm = random_direction(rng, n);
      normals = std::max(normals, std::abs(kelvin::transformed_normal(x, nrm).norm() - 1.0));
    }
    out.push_back(at_most("kelvin_involution_" + tag, involution, t.involution));
    out.push_back(at_most("kelvin_normal_unit_" + tag, normals, t.unit_normal));

    const Vec a = random_vector(rng, n, -1.0, 1.0);
    const auto check = kelvin::kelvin_potential(std::make_shared<oracle::Dipole>(a));
    double linear = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Point xc = log_uniform(rng, 1e-3, 1.0) * random_direction(rng, n);
      linear = std::max(linear, std::abs(check->value(xc) - a.dot(xc)));
    }
    out.push_back(at_most("kelvin_dipole_linear_" + tag, linear, t.kelvin_linear));

    Vec ah = random_vector(rng, n, -1.0, 1.0);
    ah(n - 1) = 0.0;
    const WaveParams params = oracle_params(config.physics, n);
    const auto flat = kelvin::transformed_surface(std::make_shared<FlatSurface>(n), 0.2);
    const auto data = kelvin::robin_data(flat, params);
    const auto compatible = kelvin::kelvin_potential(oracle::boundary_compatible_field(ah, n));
    double robin = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Vec xc = (0.01 + 0.18 * unit(rng)) * random_direction(rng, n - 1);
      robin = std::max(robin, kelvin::robin_residual(*compatible, flat, data, flat.point(xc)));
    }
    out.push_back(at_most("kelvin_robin_flat_" + tag, robin, t.robin));

    const auto bump = rational_surface(n, 0.3, 1.0);
    const auto patch = kelvin::transformed_surface(bump, 0.2);
    double round_trip = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Vec xc = (0.01 + 0.18 * unit(rng)) * random_direction(rng, n - 1);
      const Point x = patch.preimage(xc);
      const Vec xh = x.head(n - 1);
      round_trip = std::max(round_trip, std::abs(x(n - 1) - bump->eta(xh)));
      round_trip = std::max(round_trip, (kelvin::kelvin_point(x) - patch.point(xc)).norm());
    }
    out.push_back(at_most("kelvin_surface_round_trip_" + tag, round_trip, t.round_trip));
  }
  return out;
}

std::vector<Check> dispersion_checks(const RunConfig& config) {
  const auto& phys = config.physics;
  const int N = 256;
  const double L = 32.0 * pi;  // k = 0.5, 1, 2 are grid wavenumbers
  const spectral::Transform fft(N, L);
  const solver::Samples flat = solver::Samples::Zero(N);
  std::vector<Check> out;
  for (double k : {0.5, 1.0, 2.0}) {
    solver::Samples mode(N);
    for (int j = 0; j < N; ++j) mode(j) = std::cos(k * (-L + j * 2.0 * L / N));
    auto symbol_at = [&](double speed) {
      const WaveParams p =
          make_params(phys.g, phys.sigma, horizontal_speed(speed, 2), 2, phys.eps);
      const solver::Samples d = solver::linearized_residual(p, fft, flat, mode);
      return 2.0 * d.dot(mode) / N;
    };
    const double speed = solver::dispersion_speed(k, phys.g, phys.sigma);
    char name[64];
    std::snprintf(name, sizeof name, "dispersion_lock_k%g", k);
    out.push_back(at_most(name, std::abs(symbol_at(speed)), config.tolerances.dispersion));
    const double off = 1.1 * speed;
    std::snprintf(name, sizeof name, "dispersion_symbol_k%g", k);
    out.push_back(within(name, symbol_at(off), phys.g + phys.sigma * k * k - off * off * k,
                         config.tolerances.dispersion));
  }
  return out;
}

std::vector<Check> energy_oracle_checks(const RunConfig& config) {
  const auto& t = config.tolerances;
  std::vector<Check> out;

  // Dipole at height h over a flat surface: KE in the half-plane is
  // pi |a|^2 / (8 h^2); the part outside B_r is pi |a|^2 / (4 r^2) to leading order.
  {
    const double h = 1.0;
    const double r = config.verify.volume_radius;
    Vec a(2);
    a << 0.8, -0.3;
    Point center(2);
    center << 0.0, h;
    const oracle::Dipole f(a, center);
    const double expected = pi * a.squaredNorm() / (8.0 * h * h) - pi * a.squaredNorm() / (4.0 * r * r);
    out.push_back(within("oracle_volume_energy_n2",
                         identities::kinetic_energy_volume(f, FlatSurface(2), r), expected, 0.0,
                         t.energy_quadrature));
  }

  for (int n : {2, 3}) {
    const std::string tag = dim_tag(n);
    const WaveParams params = oracle_params(config.physics, n);
    Vec a = Vec::Zero(n);
    a(0) = -0.3;
    if (n == 3) a(1) = 0.2;
    const oracle::Dipole dipole(a);
    const Vec shell = identities::angular_momentum_shell(dipole, 50.0, n, config.verify.shell_order);
    const Vec limit = identities::angular_momentum_limit(a, n);
    out.push_back(at_most("oracle_angular_momentum_" + tag, (shell - limit).norm(),
                          1e-10 * std::max(1.0, limit.norm())));

    const double mean = tail::model_angular_mean(a, params, 40.0);
    out.push_back(within("oracle_tail_mean_" + tag,
                         tail::model_angular_mean_quadrature(a, params, 40.0, 64), mean,
                         1e-14, 1e-10));

    const double ke = -kinetic_constant(n) * params.c.dot(a);
    const DipoleEstimate back = identities::dipole_from_kinetic(ke, params.c, n);
    out.push_back(at_most("oracle_kinetic_round_trip_" + tag,
                          std::abs(back.a.dot(params.c) - a.dot(params.c)) / std::abs(a.dot(params.c)),
                          1e-12));
  }
  return out;
}

std::vector<BoundarySlopes> synthetic_boundary_slopes(const RunConfig& config) {
  const std::vector<double>& radii = config.verify.flux_radii;
  std::vector<BoundarySlopes> out;
  struct Case {
    std::string name;
    int n;
    double power;
  };
  for (const Case& c : {Case{"rational_n2", 2, 2.0}, Case{"rational_n3", 3, 3.0}}) {
    const auto surface = rational_surface(c.n, 0.3, c.power);
    const WaveParams params = oracle_params(config.physics, c.n);
    std::vector<double> cap, adv;
    for (double r : radii) {
      const auto flux = identities::surface_boundary_flux(*surface, params, r);
      cap.push_back(flux.capillary);
      adv.push_back(flux.advective);
    }
    out.push_back({c.name, c.n, log_log_slope(radii, cap), log_log_slope(radii, adv)});
  }
  return out;
}

std::vector<Check> synthetic_tail_checks(const RunConfig& config) {
  const tail::Window window = config.verify.fit_window;
  std::vector<Check> out;

  for (int n : {2, 3}) {
    const std::string tag = dim_tag(n);
    const WaveParams params = oracle_params(config.physics, n);
    Vec a = Vec::Zero(n);
    a(0) = -0.2;
    if (n == 3) a(1) = 0.1;
    const AnalyticSurface model(n, [&](const Vec& xh) { return tail::eta_tail_model(xh, a, params); });
    const tail::TailFit fit = tail::fit_decay_exponent(model, window);
    out.push_back(within("synthetic_tail_exponent_" + tag, fit.exponent, n, 1e-6));
    const DipoleEstimate est = tail::extract_dipole_tail(model, params, window);
    out.push_back(at_most("synthetic_tail_dipole_" + tag, (est.a - a).norm() / a.norm(), 1e-6));
  }

  const double eps = config.physics.eps;
  for (const auto& s : synthetic_boundary_slopes(config)) {
    const double bound = -(s.n + eps / 2.0);
    out.push_back(at_most("synthetic_capillary_slope_" + s.surface, s.capillary, bound));
    out.push_back(at_most("synthetic_advective_slope_" + s.surface, s.advective, bound));
  }
  return out;
}

Report oracle_suite(const RunConfig& config) {
  Report report;
  report.command = "oracle_suite";
  for (auto&& group : {hemisphere_checks(config), divergence_checks(config), kelvin_checks(config),
                       dispersion_checks(config), energy_oracle_checks(config),
                       synthetic_tail_checks(config)}) {
    report.checks.insert(report.checks.end(), group.begin(), group.end());
  }
  report.summary["seed"] = config.seed;
  return report;
}

WaveAnalysis analyze_wave(const solver::ConformalWave& wave, const RunConfig& config) {
  const auto& v = config.verify;
  WaveAnalysis out;
  out.params = wave.params;
  out.params.eps = config.physics.eps;
  out.residual_max = staged("newton_residual", [&] {
    return solver::bernoulli_residual(wave).cwiseAbs().maxCoeff();
  });
  out.trivial = wave.y.cwiseAbs().maxCoeff() == 0.0;
  if (out.trivial) return out;

  const WaveParams& p = out.params;
  const auto series = std::make_shared<ConformalSeries>(wave);
  const auto field = std::make_shared<WaveField>(series);
  const auto surface = std::make_shared<WaveSurface>(series);
  const double period = 2.0 * wave.L;

  out.kinetic_energy = staged("kinetic_energy", [&] { return solver::wave_energy(wave); });
  out.energy = identities::dipole_from_kinetic(out.kinetic_energy, p.c, 2);
  out.ke_volume = staged("volume_energy", [&] {
    return identities::kinetic_energy_volume(*field, *surface, v.volume_radius);
  });
  out.ke_surface = staged("surface_energy", [&] {
    return identities::kinetic_energy_surface(
        [&](const Vec& xh) { return surface->potential(xh); }, *surface, p, v.volume_radius);
  });

  out.exponent_fit = staged("tail_exponent", [&] {
    return tail::fit_decay_exponent(*surface, v.fit_window);
  });
  out.coefficient_fit = staged("tail_coefficient", [&] {
    return tail::fit_tail_coefficient(*surface, v.fit_window);
  });
  out.tail = staged("tail_dipole", [&] {
    return tail::extract_dipole_tail(*surface, p, v.fit_window);
  });
  for (const auto& s : surface->samples(v.fit_window.r1, v.fit_window.r2)) {
    if (s.x(0) > 0.0) out.tail_profile.emplace_back(s.x(0), s.eta);
  }

  out.kelvin = staged("kelvin_dipole", [&] {
    kelvin::KelvinFitOptions options;
    for (auto it = v.kelvin_radii.rbegin(); it != v.kelvin_radii.rend(); ++it)
      options.radii.push_back(1.0 / *it);
    options.quadratic = true;
    DipoleEstimate est =
        kelvin::extract_dipole_kelvin(*kelvin::kelvin_potential(field), options);
    for (int i = 0; i < v.image_iterations; ++i) {
      const FieldPtr isolated = oracle::superpose(
          {{1.0, field}, {-1.0, std::make_shared<oracle::PeriodicDipoleImages>(est.a, period)}});
      est = kelvin::extract_dipole_kelvin(*kelvin::kelvin_potential(isolated), options);
    }
    return est;
  });
  out.cross = tail::crosscheck_dipole({out.energy, out.tail, out.kelvin}, p,
                                      out.coefficient_fit.coefficient);
  out.kinetic_residual_kelvin =
      identities::verify_kinetic_identity(out.kinetic_energy, out.kelvin.a, p.c, 2);
  out.kinetic_residual_tail =
      identities::verify_kinetic_identity(out.kinetic_energy, out.tail.a, p.c, 2);

  out.robin_residual = staged("robin_residual", [&] {
    const auto patch = kelvin::transformed_surface(surface, 0.2);
    const auto data = kelvin::robin_data(patch, p);
    const auto check = kelvin::kelvin_potential(field);
    double worst = 0.0;
    for (double xc : {-0.19, -0.1, -0.05, -0.02, 0.02, 0.05, 0.1, 0.19}) {
      Vec x(1);
      x << xc;
      worst = std::max(worst, kelvin::robin_residual(*check, patch, data, patch.point(x)));
    }
    return worst;
  });

  out.mass = staged("excess_mass", [&] {
    const double coefficient = out.coefficient_fit.coefficient;
    return identities::excess_mass(*surface, v.mass_window,
                                   [coefficient](double w) { return 2.0 * coefficient / w; });
  });
  out.absolute_mass = identities::absolute_mass(*surface, v.mass_window);
  out.periodic_mass = solver::wave_mass(wave);

  staged("angular_momentum", [&] {
    const FieldPtr isolated = oracle::superpose(
        {{1.0, field}, {-1.0, std::make_shared<oracle::PeriodicDipoleImages>(out.kelvin.a, period)}});
    std::vector<double> corrected, raw;
    for (double r : v.shell_radii) {
      corrected.push_back(identities::angular_momentum_shell(*isolated, r, 2, v.shell_order)(0));
      raw.push_back(identities::angular_momentum_shell(*field, r, 2, v.shell_order)(0));
    }
    out.angular = identities::make_shell_series(v.shell_radii, corrected);
    out.angular_raw = identities::make_shell_series(v.shell_radii, raw);
    return 0;
  });
  out.angular_target = identities::angular_momentum_limit(out.energy.a, 2)(0);
  out.angular_deviation = max_relative_deviation(out.angular.values, out.angular_target);
  out.angular_spread = relative_spread(out.angular);

  staged("boundary_flux", [&] {
    std::vector<double> flux;
    for (double r : v.shell_radii)
      flux.push_back(identities::shell_flux_A(*field, *surface, r, p, v.shell_order));
    out.flux_A = identities::make_shell_series(v.shell_radii, flux);
    out.flux_radii = v.flux_radii;
    for (double r : v.flux_radii) {
      const auto b = identities::surface_boundary_flux(*surface, p, r);
      out.capillary.push_back(b.capillary);
      out.advective.push_back(b.advective);
    }
    out.capillary_slope = log_log_slope(out.flux_radii, out.capillary);
    out.advective_slope = log_log_slope(out.flux_radii, out.advective);
    const auto edge = identities::surface_boundary_flux(*surface, p, v.volume_radius);
    out.energy_balance = edge.capillary - edge.advective +
                         identities::shell_flux_A(*field, *surface, v.volume_radius, p,
                                                  v.shell_order);
    return 0;
  });

  staged("farfield_gradient", [&] {
    const oracle::PeriodicDipoleImages images(out.kelvin.a, period);
    out.farfield_radii = v.farfield_radii;
    for (double r : v.farfield_radii) {
      double worst = 0.0;
      for (int k = 1; k <= 5; ++k) {
        const double angle = -pi * k / 6.0;
        Point x(2);
        x << r * std::cos(angle), r * std::sin(angle);
        const Vec model = oracle::dipole_gradient(out.kelvin.a, x, 2) + images.gradient(x);
        worst = std::max(worst, (field->gradient(x) - model).norm());
      }
      out.farfield_remainder.push_back(worst);
    }
    out.farfield_slope = log_log_slope(out.farfield_radii, out.farfield_remainder);
    return 0;
  });
  return out;
}

std::vector<Check> verify_checks(const WaveAnalysis& a, const RunConfig& config) {
  const auto& t = config.tolerances;
  const double bound = -(2.0 + a.params.eps / 2.0);
  if (a.trivial) {
    std::vector<Check> out{at_most("newton_residual", a.residual_max, t.newton)};
    for (const char* name :
         {"kinetic_energy", "volume_energy", "surface_energy", "tail_exponent",
          "tail_coefficient", "dipole_energy", "dipole_tail", "dipole_kelvin",
          "dipole_agreement", "kinetic_identity_kelvin", "kinetic_identity_tail",
          "robin_residual", "excess_mass", "angular_momentum", "energy_balance",
          "boundary_capillary",
          "boundary_advective", "farfield_remainder"}) {
      out.push_back(within(name, 0.0, 0.0, 0.0));
    }
    return out;
  }
  const double ca = [&] {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto* e : {&a.energy, &a.tail, &a.kelvin})
      worst = std::max(worst, a.params.c.dot(e->a));
    return worst;
  }();
  return {
      at_most("newton_residual", a.residual_max, t.newton),
      within("volume_energy", a.ke_volume, a.kinetic_energy, 0.0, t.energy_quadrature),
      within("surface_energy", a.ke_surface.value, a.kinetic_energy, 0.0, t.energy_quadrature),
      within("tail_exponent", a.exponent_fit.exponent, 2.0, 0.0, t.exponent),
      above("tail_coefficient_positive", a.coefficient_fit.coefficient, 0.0),
      at_most("dipole_agreement", a.cross.max_deviation, t.dipole_agreement),
      below("dipole_sign", ca, 0.0),
      at_most("kinetic_identity_kelvin", a.kinetic_residual_kelvin, t.kinetic_identity),
      at_most("kinetic_identity_tail", a.kinetic_residual_tail, t.kinetic_identity),
      at_most("robin_residual", a.robin_residual, t.robin),
      at_most("excess_mass_fraction", std::abs(a.mass.value) / a.absolute_mass, t.mass_fraction),
      at_most("angular_momentum_deviation", a.angular_deviation, t.angular_limit),
      at_most("angular_momentum_spread", a.angular_spread, t.angular_spread),
      within("energy_balance", a.energy_balance, 2.0 * a.ke_volume, 0.0, t.energy_quadrature),
      at_most("boundary_capillary_slope", a.capillary_slope, bound),
      at_most("boundary_advective_slope", a.advective_slope, bound),
      at_most("farfield_remainder_slope", a.farfield_slope, -2.0 - t.farfield_margin),
  };
}

Report verify_report(const solver::ConformalWave& wave, const RunConfig& config) {
  Report report;
  report.command = "verify";
  WaveAnalysis a;
  try {
    a = analyze_wave(wave, config);
  } catch (const StageError& e) {
    report.checks.push_back(failed(e.stage()));
    report.warnings.push_back(e.what());
    report.summary["failed_stage"] = e.stage();
    return report;
  }
  report.checks = verify_checks(a, config);

  auto& s = report.summary;
  s["speed"] = a.params.speed();
  s["trivial"] = a.trivial;
  s["newton_residual"] = a.residual_max;
  s["kinetic_energy"] = a.kinetic_energy;
  if (a.trivial) return report;
  s["volume_energy"] = a.ke_volume;
  s["surface_energy"] = a.ke_surface.value;
  s["surface_energy_window_too_small"] = a.ke_surface.window_too_small;
  s["tail_exponent"] = a.exponent_fit.exponent;
  s["tail_coefficient"] = a.coefficient_fit.coefficient;
  s["dipole"] = {{"energy", a.energy.a(0)},
                 {"tail", a.tail.a(0)},
                 {"kelvin", a.kelvin.a(0)},
                 {"kelvin_vertical", a.kelvin.vertical}};
  s["dipole_violations"] = a.cross.violations;
  s["excess_mass"] = {{"value", a.mass.value},
                      {"window_integral", a.mass.window_integral},
                      {"remainder", a.mass.remainder},
                      {"uncertainty", a.mass.uncertainty},
                      {"absolute", a.absolute_mass},
                      {"periodic", a.periodic_mass}};
  s["angular_momentum"] = {{"target", a.angular_target},
                           {"limit_estimate", a.angular.limit_estimate},
                           {"raw_limit_estimate", a.angular_raw.limit_estimate}};
  s["flux_A_limit"] = a.flux_A.limit_estimate;
  s["boundary_slopes"] = {{"capillary", a.capillary_slope}, {"advective", a.advective_slope}};
  s["energy_balance"] = a.energy_balance;
  s["farfield_slope"] = a.farfield_slope;

  report.plots = {
      {"angular_momentum", zip(a.angular.radii, a.angular.values)},
      {"angular_momentum_raw", zip(a.angular_raw.radii, a.angular_raw.values)},
      {"flux_A", zip(a.flux_A.radii, a.flux_A.values)},
      {"boundary_capillary", zip(a.flux_radii, a.capillary)},
      {"boundary_advective", zip(a.flux_radii, a.advective)},
      {"farfield_remainder", zip(a.farfield_radii, a.farfield_remainder)},
      {"tail_profile", a.tail_profile},
  };
  return report;
}

std::optional<double> core_edge(const solver::ConformalWave& wave) {
  const auto series = std::make_shared<ConformalSeries>(wave);
  const WaveSurface surface(series);
  auto samples = surface.samples(0.0, wave.L);
  std::erase_if(samples, [](const SurfaceSample& s) { return s.x(0) < 0.0; });
  std::sort(samples.begin(), samples.end(),
            [](const SurfaceSample& l, const SurfaceSample& r) { return l.x(0) < r.x(0); });
  std::optional<double> edge;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if ((samples[i - 1].eta < 0.0) != (samples[i].eta < 0.0)) edge = samples[i].x(0);
  }
  return edge;
}

Report tail_fit_report(const solver::ConformalWave& wave, const RunConfig& config) {
  const auto& t = config.tolerances;
  const tail::Window window = config.verify.fit_window;
  if (window.r2 > wave.L) {
    throw Error(ErrorCode::out_of_range, "fit window extends past the box half-length " +
                                             format_real(wave.L));
  }
  Report report;
  report.command = "tail_fit";
  const auto series = std::make_shared<ConformalSeries>(wave);
  const WaveSurface surface(series);
  const WaveParams& p = wave.params;

  tail::Window exponent_window = window;
  if (const auto edge = core_edge(wave); edge && *edge >= window.r1) {
    report.warnings.push_back("fit window [" + format_real(window.r1) + ", " +
                              format_real(window.r2) +
                              "] overlaps the oscillatory core; last sign change at |x| = " +
                              format_real(*edge));
    exponent_window.r1 = *edge;
  }
  report.summary["exponent_window"] = {exponent_window.r1, exponent_window.r2};

  try {
    const auto fit = tail::fit_decay_exponent(surface, exponent_window);
    report.checks.push_back(within("tail_exponent", fit.exponent, 2.0, 0.0, t.exponent));
    report.summary["exponent_residual"] = fit.residual;
  } catch (const Error& e) {
    report.checks.push_back(failed("tail_exponent"));
    report.warnings.push_back(std::string("exponent fit: ") + e.what());
  }
  try {
    const auto fit = tail::fit_tail_coefficient(surface, window);
    const auto dipole = tail::extract_dipole_tail(surface, p, window);
    report.checks.push_back(above("tail_coefficient_positive", fit.coefficient, 0.0));
    report.checks.push_back(below("tail_dipole_sign", p.c.dot(dipole.a), 0.0));
    report.summary["tail_coefficient"] = fit.coefficient;
    report.summary["coefficient_residual"] = fit.residual;
    report.summary["dipole"] = dipole.a(0);
    report.summary["dipole_uncertainty"] = dipole.uncertainty;
  } catch (const Error& e) {
    report.checks.push_back(failed("tail_coefficient_positive"));
    report.warnings.push_back(std::string("coefficient fit: ") + e.what());
  }
  Series profile;
  for (const auto& s : surface.samples(window.r1, window.r2)) {
    if (s.x(0) > 0.0) profile.emplace_back(s.x(0), s.eta);
  }
  report.plots = {{"tail_profile", std::move(profile)}};
  return report;
}

}  // namespace deepwave::cli
