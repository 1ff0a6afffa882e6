#include "deepwave/tail.hpp"

#include "deepwave/harmonic_oracle.hpp"
#include "deepwave/quadrature.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace deepwave::tail {

namespace {

constexpr int image_terms = 400;
constexpr double exponent_lo = 1.2;
constexpr double exponent_hi = 8.0;

void require_window(const SurfaceGraph& eta, Window w) {
  if (!(w.r1 > 0.0 && w.r1 < w.r2)) {
    throw Error(ErrorCode::invalid_argument, "fit window needs 0 < r1 < r2");
  }
  if (w.r2 > eta.extent()) {
    throw Error(ErrorCode::out_of_range, "fit window extends beyond the sampled surface");
  }
}

Vec horizontal(const Vec& a, int n) { return a.head(n - 1); }

struct LineFit {
  double slope;
  double intercept;
  double rms;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto m = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd design(m, 2);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = xs[static_cast<std::size_t>(i)];
    rhs(i) = ys[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  const double rms = (design * coef - rhs).norm() / std::sqrt(static_cast<double>(m));
  return {coef(1), coef(0), rms};
}

void require_single_sign(const std::vector<double>& values, const char* where) {
  bool pos = false;
  bool neg = false;
  for (double v : values) {
    pos = pos || v > 0.0;
    neg = neg || v < 0.0;
    if (v == 0.0) {
      throw Error(ErrorCode::degenerate_fit, std::string("eta vanishes inside the ") + where);
    }
  }
  if (pos && neg) {
    throw Error(ErrorCode::degenerate_fit,
                std::string("eta changes sign inside the ") + where +
                    "; the window overlaps the oscillatory core");
  }
}

}  // namespace

double eta_tail_model(const Vec& xh, const Vec& a, const WaveParams& params) {
  const int n = params.n;
  require_point_dimension(xh, n - 1, "horizontal point");
  require_point_dimension(a, n, "dipole moment");
  const double r2 = xh.squaredNorm();
  if (r2 == 0.0) throw Error(ErrorCode::singularity, "tail model at the origin");
  const Vec c = horizontal(params.c, n);
  const Vec ah = horizontal(a, n);
  const double rn = std::pow(r2, 0.5 * n);
  return (c.dot(ah) - n * c.dot(xh) * ah.dot(xh) / r2) / (params.g * rn);
}

double inverse_square_profile(double x, double period) {
  if (x == 0.0) throw Error(ErrorCode::singularity, "profile at the origin");
  if (period == 0.0) return 1.0 / (x * x);
  const double k = std::numbers::pi / period;
  const double s = std::sin(k * x);
  return k * k / (s * s);
}

double power_profile(double x, double p, double period) {
  if (x == 0.0) throw Error(ErrorCode::singularity, "profile at the origin");
  if (period == 0.0) return std::pow(std::abs(x), -p);
  if (!(p > 1.0)) throw Error(ErrorCode::invalid_argument, "image sum needs p > 1");
  double sum = 0.0;
  for (int m = image_terms; m >= 1; --m) {
    sum += std::pow(std::abs(x + m * period), -p) + std::pow(std::abs(x - m * period), -p);
  }
  sum += std::pow(std::abs(x), -p);
  // Midpoint-rule estimate of the images beyond |m| = image_terms.
  sum += 2.0 * std::pow((image_terms + 0.5) * period, 1.0 - p) / ((p - 1.0) * period);
  return sum;
}

FarField phi_farfield_model(const Point& x, const Vec& a, int n) {
  return {oracle::dipole_value(a, x, n), oracle::dipole_gradient(a, x, n)};
}

Window default_window(double half_length) {
  return {0.15 * half_length, 0.35 * half_length};
}

TailFit fit_decay_exponent(const SurfaceGraph& eta, Window window) {
  require_window(eta, window);
  TailFit fit;
  fit.window = window;
  const int n = eta.dim();
  if (n == 3) {
    constexpr int along = 64;
    std::vector<double> logs_r(along);
    for (int i = 0; i < along; ++i) {
      logs_r[static_cast<std::size_t>(i)] =
          std::log(window.r1) + std::log(window.r2 / window.r1) * i / (along - 1.0);
    }
    double rms = 0.0;
    for (int d = 0; d < 4; ++d) {
      const double psi = 0.5 * std::numbers::pi * d;
      std::vector<double> values, logs_eta;
      for (double lr : logs_r) {
        Vec xh(2);
        xh << std::exp(lr) * std::cos(psi), std::exp(lr) * std::sin(psi);
        values.push_back(eta.eta(xh));
      }
      require_single_sign(values, "fit ray");
      for (double v : values) logs_eta.push_back(std::log(std::abs(v)));
      const LineFit line = fit_line(logs_r, logs_eta);
      fit.direction_exponents.push_back(-line.slope);
      rms = std::max(rms, line.rms);
    }
    double mean = 0.0;
    for (double p : fit.direction_exponents) mean += p;
    fit.exponent = mean / 4.0;
    fit.residual = rms;
    fit.samples = 4 * along;
    return fit;
  }

  const auto samples = eta.samples(window.r1, window.r2);
  if (samples.size() < 3) {
    throw Error(ErrorCode::degenerate_fit, "too few surface samples in the fit window");
  }
  std::vector<double> xs, values;
  for (const auto& s : samples) {
    xs.push_back(s.x(0));
    values.push_back(s.eta);
  }
  require_single_sign(values, "fit window");
  const double sign = values.front() > 0.0 ? 1.0 : -1.0;
  fit.samples = samples.size();
  const double period = eta.period();
  std::vector<double> log_eta;
  for (double v : values) log_eta.push_back(std::log(std::abs(v)));

  if (period == 0.0) {
    std::vector<double> log_r;
    for (double x : xs) log_r.push_back(std::log(std::abs(x)));
    const LineFit line = fit_line(log_r, log_eta);
    fit.exponent = -line.slope;
    fit.coefficient = sign * std::exp(line.intercept);
    fit.residual = line.rms;
    return fit;
  }

  // log|eta| = log B + log S_p(x); for fixed p the best log B is the mean gap.
  fit.periodic = true;
  auto misfit = [&](double p, double& log_b) {
    std::vector<double> gaps;
    double mean = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      gaps.push_back(log_eta[i] - std::log(power_profile(xs[i], p, period)));
      mean += gaps.back();
    }
    mean /= static_cast<double>(gaps.size());
    double ss = 0.0;
    for (double gp : gaps) ss += (gp - mean) * (gp - mean);
    log_b = mean;
    return ss;
  };
  const auto best = boost::math::tools::brent_find_minima(
      [&](double p) {
        double unused = 0.0;
        return misfit(p, unused);
      },
      exponent_lo, exponent_hi, std::numeric_limits<double>::digits / 2);
  double log_b = 0.0;
  const double ss = misfit(best.first, log_b);
  fit.exponent = best.first;
  fit.coefficient = sign * std::exp(log_b);
  fit.residual = std::sqrt(ss / static_cast<double>(xs.size()));
  return fit;
}

TailFit fit_tail_coefficient(const SurfaceGraph& eta, Window window) {
  if (eta.dim() != 2) {
    throw Error(ErrorCode::dimension_mismatch, "coefficient fit is two-dimensional");
  }
  require_window(eta, window);
  const auto samples = eta.samples(window.r1, window.r2);
  if (samples.empty()) {
    throw Error(ErrorCode::degenerate_fit, "no surface samples in the fit window");
  }
  double num = 0.0;
  double den = 0.0;
  for (const auto& s : samples) {
    const double prof = inverse_square_profile(s.x(0), eta.period());
    num += s.eta * prof;
    den += prof * prof;
  }
  TailFit fit;
  fit.window = window;
  fit.exponent = 2.0;
  fit.coefficient = num / den;
  fit.periodic = eta.period() > 0.0;
  fit.samples = samples.size();
  double ss = 0.0;
  for (const auto& s : samples) {
    const double r = s.eta - fit.coefficient * inverse_square_profile(s.x(0), eta.period());
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(samples.size()));
  return fit;
}

DipoleEstimate extract_dipole_tail(const SurfaceGraph& eta, const WaveParams& params,
                                   Window window) {
  const int n = params.n;
  if (eta.dim() != n) {
    throw Error(ErrorCode::dimension_mismatch, "surface and parameters differ in dimension");
  }
  if (n == 2) {
    const TailFit fit = fit_tail_coefficient(eta, window);
    Vec a = Vec::Zero(2);
    a(0) = -params.g * fit.coefficient / params.c(0);
    const double scale = std::abs(fit.coefficient) > 0.0 ? std::abs(fit.coefficient) : 1.0;
    return make_dipole_estimate(a, DipoleMethod::tail, fit.residual / scale);
  }
  require_window(eta, window);
  const auto samples = eta.samples(window.r1, window.r2);
  const auto m = static_cast<Eigen::Index>(samples.size());
  if (m < 2) throw Error(ErrorCode::degenerate_fit, "too few surface samples for the fit");
  Eigen::MatrixXd design(m, 2);
  Eigen::VectorXd rhs(m);
  const Vec c = params.c.head(2);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Vec& xh = samples[static_cast<std::size_t>(i)].x;
    const double r2 = xh.squaredNorm();
    const double scale = 1.0 / (params.g * std::pow(r2, 1.5));
    for (int j = 0; j < 2; ++j) {
      design(i, j) = scale * (c(j) - 3.0 * c.dot(xh) * xh(j) / r2);
    }
    rhs(i) = samples[static_cast<std::size_t>(i)].eta;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(1) < 1e-8 * sv(0)) {
    throw Error(ErrorCode::degenerate_fit,
                "insufficient angular coverage to resolve both horizontal components");
  }
  const Eigen::VectorXd coef = svd.solve(rhs);
  const double rms = (design * coef - rhs).norm() / std::sqrt(static_cast<double>(m));
  const double scale = rhs.norm() / std::sqrt(static_cast<double>(m));
  Vec a = Vec::Zero(3);
  a(0) = coef(0);
  a(1) = coef(1);
  return make_dipole_estimate(a, DipoleMethod::tail, scale > 0.0 ? rms / scale : 0.0);
}

double model_angular_mean(const Vec& a, const WaveParams& params, double r) {
  const int n = params.n;
  const double ca = params.c.head(n - 1).dot(a.head(n - 1));
  if (n == 2) return -ca / (params.g * r * r);
  return -ca / (2.0 * params.g * r * r * r);
}

double model_angular_mean_quadrature(const Vec& a, const WaveParams& params, double r,
                                     int order) {
  const int n = params.n;
  if (n == 2) {
    Vec p(1), m(1);
    p << r;
    m << -r;
    return 0.5 * (eta_tail_model(p, a, params) + eta_tail_model(m, a, params));
  }
  const quad::Rule rule = quad::gauss_legendre(order, 0.0, 2.0 * std::numbers::pi);
  quad::CompensatedSum sum;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    Vec xh(2);
    xh << r * std::cos(rule.nodes[i]), r * std::sin(rule.nodes[i]);
    sum.add(rule.weights[i] * eta_tail_model(xh, a, params));
  }
  return sum.value() / (2.0 * std::numbers::pi);
}

double model_remainder(const Vec& a, const WaveParams& params, double window) {
  if (!(window > 0.0)) throw Error(ErrorCode::invalid_argument, "window must be positive");
  const int n = params.n;
  const double ca = params.c.head(n - 1).dot(a.head(n - 1));
  // 2D: 2 int_W^inf -ca/(g x^2); 3D: int_W^inf 2 pi r (-ca / (2 g r^3)) dr.
  if (n == 2) return -2.0 * ca / (params.g * window);
  return -std::numbers::pi * ca / (params.g * window);
}

CrossCheck crosscheck_dipole(const std::vector<DipoleEstimate>& estimates,
                             const WaveParams& params,
                             std::optional<double> tail_coefficient) {
  if (estimates.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "cross-check needs at least two estimates");
  }
  const int n = params.n;
  const Vec c = params.c.head(n - 1);
  const Vec c_hat = c / c.norm();
  CrossCheck out;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const Vec ai = estimates[i].a.head(n - 1);
    if (c.dot(ai) > 0.0) {
      out.sign_ok = false;
      out.violations.push_back(std::string(to_string(estimates[i].method)) +
                               ": c . a > 0");
    }
    for (std::size_t j = i + 1; j < estimates.size(); ++j) {
      const Vec aj = estimates[j].a.head(n - 1);
      double diff = 0.0;
      double size = 0.0;
      if (estimates[i].transverse_known && estimates[j].transverse_known) {
        diff = (ai - aj).norm();
        size = std::max(ai.norm(), aj.norm());
      } else {
        diff = std::abs(c_hat.dot(ai - aj));
        size = std::max(std::abs(c_hat.dot(ai)), std::abs(c_hat.dot(aj)));
      }
      if (size > 0.0) out.max_deviation = std::max(out.max_deviation, diff / size);
    }
  }
  if (tail_coefficient) {
    out.tail_positive = *tail_coefficient > 0.0;
    if (!*out.tail_positive) out.violations.push_back("tail coefficient is not positive");
  }
  return out;
}

}  // namespace deepwave::tail
