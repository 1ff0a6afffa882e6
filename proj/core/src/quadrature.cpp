#include "deepwave/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace deepwave::quad {

namespace {

Rule compute_gauss_legendre(int order) {
  Rule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const unsigned n = static_cast<unsigned>(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = std::legendre(n, x);
      const double pm1 = std::legendre(n - 1, x);
      dp = order * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double p = std::legendre(n, x);
    const double pm1 = std::legendre(n - 1, x);
    dp = order * (x * p - pm1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

}  // namespace

const Rule& gauss_legendre(int order) {
  if (order < 1 || order > 512) {
    throw Error(ErrorCode::invalid_argument, "Gauss-Legendre order out of range");
  }
  static std::mutex mutex;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) {
    it = cache.emplace(order, compute_gauss_legendre(order)).first;
  }
  return it->second;
}

Rule gauss_legendre(int order, double a, double b) {
  const Rule& ref = gauss_legendre(order);
  Rule rule;
  rule.nodes.resize(ref.size());
  rule.weights.resize(ref.size());
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < ref.size(); ++i) {
    rule.nodes[i] = mid + half * ref.nodes[i];
    rule.weights[i] = half * ref.weights[i];
  }
  return rule;
}

Rule composite(const std::vector<double>& breaks, int order) {
  Rule rule;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const Rule panel = gauss_legendre(order, breaks[p], breaks[p + 1]);
    rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
    rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
  }
  return rule;
}

std::vector<double> uniform_breaks(double a, double b, int panels) {
  std::vector<double> breaks(panels + 1);
  for (int i = 0; i <= panels; ++i) {
    breaks[i] = a + (b - a) * static_cast<double>(i) / panels;
  }
  breaks.back() = b;
  return breaks;
}

std::vector<double> graded_breaks(double a, double b, int panels, double ratio) {
  std::vector<double> widths(panels);
  double w = 1.0;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    widths[i] = w;
    total += w;
    w *= ratio;
  }
  std::vector<double> breaks(panels + 1);
  breaks[0] = a;
  double acc = 0.0;
  for (int i = 0; i < panels; ++i) {
    acc += widths[i];
    breaks[i + 1] = a + (b - a) * acc / total;
  }
  breaks.back() = b;
  return breaks;
}

SphereRule lower_hemisphere(int n, int order) {
  require_dimension(n);
  SphereRule rule;
  if (n == 2) {
    const Rule theta = gauss_legendre(order, -std::numbers::pi, 0.0);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      Vec x(2);
      x << std::cos(theta.nodes[i]), std::sin(theta.nodes[i]);
      rule.points.push_back(x);
      rule.weights.push_back(theta.weights[i]);
    }
    return rule;
  }
  // beta: polar angle measured from -e_y; psi: azimuth in the horizontal plane.
  const Rule beta = gauss_legendre(order, 0.0, 0.5 * std::numbers::pi);
  const Rule psi = gauss_legendre(2 * order, 0.0, 2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const double sb = std::sin(beta.nodes[i]);
    const double cb = std::cos(beta.nodes[i]);
    for (std::size_t j = 0; j < psi.size(); ++j) {
      Vec x(3);
      x << sb * std::cos(psi.nodes[j]), sb * std::sin(psi.nodes[j]), -cb;
      rule.points.push_back(x);
      rule.weights.push_back(beta.weights[i] * psi.weights[j] * sb);
    }
  }
  return rule;
}

}  // namespace deepwave::quad
