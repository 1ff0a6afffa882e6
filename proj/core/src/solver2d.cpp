#include "deepwave/solver2d.hpp"

#include <Eigen/LU>

#include <cmath>
#include <numbers>

namespace deepwave::solver {

namespace {

struct SurfaceDerivatives {
  Samples y_xi;
  Samples y_xixi;
  Samples x_xi;
  Samples x_xixi;
};

// One forward transform, four inverses: y_xi, y_xixi and their Hilbert
// transforms (the latter give x_xi - 1 and x_xixi).
SurfaceDerivatives derive(const spectral::Transform& fft, const Samples& y) {
  const auto coeffs = fft.forward(y);
  const int n = fft.size();
  const auto nyquist = static_cast<std::size_t>(n / 2);
  auto with_symbol = [&](auto symbol) {
    auto c = coeffs;
    for (std::size_t m = 0; m < nyquist; ++m) {
      c[m] *= symbol(fft.wavenumber(static_cast<int>(m)));
    }
    c[nyquist] = 0.0;
    return fft.inverse(std::move(c));
  };
  using C = std::complex<double>;
  SurfaceDerivatives d;
  d.y_xi = with_symbol([](double k) { return C(0.0, k); });
  d.y_xixi = with_symbol([](double k) { return C(-k * k, 0.0); });
  // H o D has symbol (-i sgn k)(i k) = |k|; H o D^2 has symbol i k |k|.
  d.x_xi = with_symbol([](double k) { return C(k, 0.0); });
  d.x_xi.array() += 1.0;
  d.x_xixi = with_symbol([](double k) { return C(0.0, k * k); });
  return d;
}

void require_wave_params(const WaveParams& params) {
  if (params.n != 2) {
    throw Error(ErrorCode::dimension_mismatch, "the conformal solver is two-dimensional");
  }
}

// Maps the reduced unknown m = 0 .. N/2 to the grid indices N/2 +- m.
int mirror_index(int n, int m, int side) {
  const int j = n / 2 + side * m;
  return ((j % n) + n) % n;
}

Samples expand_even(const Eigen::VectorXd& reduced, int n) {
  Samples y(n);
  for (int m = 0; m <= n / 2; ++m) {
    y(mirror_index(n, m, 1)) = reduced(m);
    y(mirror_index(n, m, -1)) = reduced(m);
  }
  return y;
}

Eigen::VectorXd restrict_even(const Samples& y) {
  const auto n = static_cast<int>(y.size());
  Eigen::VectorXd out(n / 2 + 1);
  for (int m = 0; m <= n / 2; ++m) out(m) = y(mirror_index(n, m, 1));
  return out;
}

Eigen::MatrixXd reduced_jacobian(const WaveParams& params, const spectral::Transform& fft,
                                 const Samples& y) {
  const int n = fft.size();
  const int unknowns = n / 2 + 1;
  Eigen::MatrixXd jac(unknowns, unknowns);
  Eigen::VectorXd basis = Eigen::VectorXd::Zero(unknowns);
  for (int m = 0; m < unknowns; ++m) {
    basis(m) = 1.0;
    jac.col(m) = restrict_even(linearized_residual(params, fft, y, expand_even(basis, n)));
    basis(m) = 0.0;
  }
  return jac;
}

double max_norm(const Samples& r) { return r.cwiseAbs().maxCoeff(); }

void check_solvable(const WaveParams& params) {
  require_wave_params(params);
  if (!(params.sigma > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "solitary waves need positive surface tension");
  }
  const double c_min = minimum_speed(params.g, params.sigma);
  if (params.speed() >= c_min) {
    throw Error(ErrorCode::out_of_range,
                "wave speed " + std::to_string(params.speed()) +
                    " is outside the solitary range c < c_min = " + std::to_string(c_min));
  }
}

}  // namespace

void validate(const SolverConfig& config) {
  if (!spectral::is_power_of_two(config.N) || config.N < 16) {
    throw Error(ErrorCode::invalid_argument, "N must be a power of two >= 16");
  }
  if (!(config.L > 0.0)) throw Error(ErrorCode::invalid_argument, "L must be positive");
  if (!(config.tolerance > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "Newton tolerance must be positive");
  }
  if (config.max_iterations < 1) {
    throw Error(ErrorCode::invalid_argument, "max_iterations must be >= 1");
  }
  if (config.continuation_steps < 1) {
    throw Error(ErrorCode::invalid_argument, "continuation needs at least one step");
  }
  if (!(config.start_offset > 0.0 && config.start_offset < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "start_offset must lie in (0, 1)");
  }
  if (!(config.amplitude_factor >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "amplitude_factor must be non-negative");
  }
}

double dispersion_speed(double k, double g, double sigma) {
  if (!(k > 0.0)) throw Error(ErrorCode::invalid_argument, "wavenumber must be positive");
  return std::sqrt(g / k + sigma * k);
}

double minimum_speed(double g, double sigma) { return std::pow(4.0 * g * sigma, 0.25); }

WaveParams wave_params(double g, double sigma, double speed) {
  return make_params(g, sigma, horizontal_speed(speed, 2), 2, 0.5);
}

ConformalWave flat_wave(const WaveParams& params, int N, double L) {
  require_wave_params(params);
  ConformalWave w;
  w.params = params;
  w.N = N;
  w.L = L;
  w.y = Samples::Zero(N);
  return w;
}

Samples depression_guess(const WaveParams& params, int N, double L,
                         double amplitude_factor) {
  check_solvable(params);
  const double g = params.g;
  const double sigma = params.sigma;
  const double c = params.speed();
  const double c_min = minimum_speed(g, sigma);
  const double k_star = std::sqrt(g / sigma);
  const double mu = std::sqrt((c_min * c_min - c * c) * k_star * k_star * k_star / g);
  const double amplitude = amplitude_factor * std::sqrt(1.0 - c / c_min) / k_star;
  Samples y(N);
  const double h = 2.0 * L / N;
  for (int j = 0; j < N; ++j) {
    const double xi = -L + j * h;
    y(j) = -amplitude * std::cos(k_star * xi) / std::cosh(mu * xi);
  }
  return y;
}

Samples surface_x_derivative(const ConformalWave& wave) {
  const spectral::Transform fft(wave.N, wave.L);
  return derive(fft, wave.y).x_xi;
}

Samples surface_abscissa(const ConformalWave& wave) {
  const spectral::Transform fft(wave.N, wave.L);
  Samples x = fft.hilbert(wave.y);
  for (int j = 0; j < wave.N; ++j) x(j) += wave.xi(j);
  return x;
}

Samples bernoulli_residual(const WaveParams& params, const spectral::Transform& fft,
                           const Samples& y) {
  require_wave_params(params);
  const SurfaceDerivatives d = derive(fft, y);
  const double c2 = params.speed_squared();
  Samples r(y.size());
  for (Eigen::Index j = 0; j < y.size(); ++j) {
    const double jac = d.x_xi(j) * d.x_xi(j) + d.y_xi(j) * d.y_xi(j);
    if (!(jac > 0.0)) {
      throw Error(ErrorCode::self_intersection,
                  "conformal map degenerates (J <= 0): surface self-intersects");
    }
    const double num = d.x_xi(j) * d.y_xixi(j) - d.y_xi(j) * d.x_xixi(j);
    const double curvature = num / (jac * std::sqrt(jac));
    r(j) = 0.5 * c2 * (1.0 / jac - 1.0) + params.g * y(j) - params.sigma * curvature;
  }
  return r;
}

Samples bernoulli_residual(const ConformalWave& wave) {
  const spectral::Transform fft(wave.N, wave.L);
  return bernoulli_residual(wave.params, fft, wave.y);
}

Samples linearized_residual(const WaveParams& params, const spectral::Transform& fft,
                            const Samples& y, const Samples& dy) {
  require_wave_params(params);
  const SurfaceDerivatives b = derive(fft, y);
  SurfaceDerivatives d = derive(fft, dy);
  d.x_xi.array() -= 1.0;
  const double c2 = params.speed_squared();
  Samples out(y.size());
  for (Eigen::Index j = 0; j < y.size(); ++j) {
    const double jac = b.x_xi(j) * b.x_xi(j) + b.y_xi(j) * b.y_xi(j);
    const double num = b.x_xi(j) * b.y_xixi(j) - b.y_xi(j) * b.x_xixi(j);
    const double d_jac = 2.0 * (b.x_xi(j) * d.x_xi(j) + b.y_xi(j) * d.y_xi(j));
    const double d_num = d.x_xi(j) * b.y_xixi(j) + b.x_xi(j) * d.y_xixi(j) -
                         d.y_xi(j) * b.x_xixi(j) - b.y_xi(j) * d.x_xixi(j);
    const double j32 = jac * std::sqrt(jac);
    const double d_curv = d_num / j32 - 1.5 * num * d_jac / (j32 * jac);
    out(j) = -0.5 * c2 * d_jac / (jac * jac) + params.g * dy(j) - params.sigma * d_curv;
  }
  return out;
}

ConformalWave solve_wave(const WaveParams& params, const SolverConfig& config,
                         const Samples& guess) {
  validate(config);
  check_solvable(params);
  if (guess.size() != config.N) {
    throw Error(ErrorCode::dimension_mismatch, "initial guess does not match N");
  }
  const spectral::Transform fft(config.N, config.L);
  Eigen::VectorXd u = restrict_even(guess);
  Samples y = expand_even(u, config.N);
  double res = max_norm(bernoulli_residual(params, fft, y));
  int iter = 0;
  while (res > config.tolerance) {
    if (iter == config.max_iterations) {
      throw Error(ErrorCode::non_convergence,
                  "Newton did not converge in " + std::to_string(iter) +
                      " iterations; last residual " + std::to_string(res));
    }
    ++iter;
    const Eigen::MatrixXd jac = reduced_jacobian(params, fft, y);
    const Eigen::VectorXd rhs = -restrict_even(bernoulli_residual(params, fft, y));
    const Eigen::VectorXd step = jac.partialPivLu().solve(rhs);
    double lambda = 1.0;
    bool accepted = false;
    for (int k = 0; k < 12 && !accepted; ++k, lambda *= 0.5) {
      const Eigen::VectorXd trial = u + lambda * step;
      const Samples y_trial = expand_even(trial, config.N);
      try {
        const double r = max_norm(bernoulli_residual(params, fft, y_trial));
        if (std::isfinite(r) && r < res) {
          u = trial;
          y = y_trial;
          res = r;
          accepted = true;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::self_intersection) throw;
      }
    }
    if (!accepted) {
      throw Error(ErrorCode::non_convergence,
                  "Newton line search failed; last residual " + std::to_string(res));
    }
  }
  ConformalWave wave;
  wave.params = params;
  wave.N = config.N;
  wave.L = config.L;
  wave.y = y;
  wave.residual_max = res;
  wave.iterations = iter;
  return wave;
}

ConformalWave continuation(const WaveParams& params, const SolverConfig& config) {
  validate(config);
  check_solvable(params);
  const double c_min = minimum_speed(params.g, params.sigma);
  const double target = 1.0 - params.speed() / c_min;
  std::vector<double> offsets;
  if (target <= config.start_offset || config.continuation_steps == 1) {
    offsets.push_back(target);
  } else {
    const int steps = config.continuation_steps;
    for (int i = 0; i < steps; ++i) {
      offsets.push_back(config.start_offset *
                        std::pow(target / config.start_offset, i / (steps - 1.0)));
    }
    offsets.back() = target;
  }
  ConformalWave wave;
  Samples guess;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    const bool last = i + 1 == offsets.size();
    const WaveParams step =
        last ? params : wave_params(params.g, params.sigma, c_min * (1.0 - offsets[i]));
    if (i == 0) guess = depression_guess(step, config.N, config.L, config.amplitude_factor);
    wave = solve_wave(step, config, guess);
    guess = wave.y;
  }
  return wave;
}

ConformalWave extend_box(const ConformalWave& wave, double new_half_length,
                         const SolverConfig& config) {
  const double h = wave.spacing();
  const double cells = 2.0 * new_half_length / h;
  const int n_new = static_cast<int>(std::lround(cells));
  if (std::abs(cells - n_new) > 1e-9 * cells || n_new < wave.N ||
      !spectral::is_power_of_two(n_new)) {
    throw Error(ErrorCode::invalid_argument,
                "extended box must keep the grid spacing with a power-of-two size");
  }
  const int offset = (n_new - wave.N) / 2;
  Samples guess = Samples::Zero(n_new);
  guess.segment(offset, wave.N) = wave.y;
  SolverConfig cfg = config;
  cfg.N = n_new;
  cfg.L = new_half_length;
  return solve_wave(wave.params, cfg, guess);
}

Samples surface_potential(const ConformalWave& wave) {
  const spectral::Transform fft(wave.N, wave.L);
  return wave.speed() * fft.hilbert(wave.y);
}

double wave_energy(const ConformalWave& wave) {
  const spectral::Transform fft(wave.N, wave.L);
  const Samples hy = fft.hilbert(wave.y);
  const Samples y_xi = fft.derivative(wave.y);
  const double c2 = wave.params.speed_squared();
  const double ke = -0.5 * c2 * hy.dot(y_xi) * wave.spacing();
  const double scale = c2 * wave.y.squaredNorm() * wave.spacing() + 1e-300;
  if (ke < -1e-12 * scale) {
    throw Error(ErrorCode::invalid_argument,
                "negative kinetic energy: Hilbert sign convention is inconsistent");
  }
  return std::max(ke, 0.0);
}

double wave_mass(const ConformalWave& wave) {
  const Samples x_xi = surface_x_derivative(wave);
  return wave.y.dot(x_xi) * wave.spacing();
}

std::vector<double> cosine_coefficients(const ConformalWave& wave) {
  const spectral::Transform fft(wave.N, wave.L);
  const auto coeffs = fft.forward(wave.y);
  std::vector<double> a(static_cast<std::size_t>(wave.N / 2));
  for (int m = 0; m < wave.N / 2; ++m) {
    // Grid starts at -L, so mode m picks up the phase (-1)^m.
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const double value = sign * coeffs[static_cast<std::size_t>(m)].real() / wave.N;
    a[static_cast<std::size_t>(m)] = m == 0 ? value : 2.0 * value;
  }
  return a;
}

double symmetry_defect(const Samples& y) {
  const auto n = static_cast<int>(y.size());
  double worst = 0.0;
  for (int m = 0; m <= n / 2; ++m) {
    worst = std::max(worst, std::abs(y(mirror_index(n, m, 1)) - y(mirror_index(n, m, -1))));
  }
  return worst;
}

}  // namespace deepwave::solver
