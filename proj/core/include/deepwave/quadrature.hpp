#pragma once

#include "deepwave/core_types.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace deepwave::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule of the given order on [-1, 1].
const Rule& gauss_legendre(int order);

/// Gauss-Legendre rule mapped to [a, b].
Rule gauss_legendre(int order, double a, double b);

/// Composite Gauss-Legendre over the given panel breakpoints (increasing).
Rule composite(const std::vector<double>& breaks, int order);

/// Breakpoints on [a, b] with `panels` panels whose widths shrink
/// geometrically (ratio < 1) towards b.
std::vector<double> graded_breaks(double a, double b, int panels, double ratio);

std::vector<double> uniform_breaks(double a, double b, int panels);

/// Nodes on the lower half of the unit sphere {|x| = 1, y < 0} in R^n with
/// surface weights; tensor Gauss-Legendre in the angle variables.
struct SphereRule {
  std::vector<Vec> points;
  std::vector<double> weights;
};

SphereRule lower_hemisphere(int n, int order);

/// Sum with Neumaier compensation; fixed order, so results are reproducible.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace deepwave::quad
