#include "support.hpp"

#include "deepwave/tail.hpp"

#include <cmath>
#include <numbers>

using namespace deepwave;
using deepwave::testing::error_of;
using deepwave::testing::vec;

namespace {

constexpr double pi = std::numbers::pi;

// Periodized inverse-square tail sampled on [-half, half] with period 2 half.
std::shared_ptr<SampledSurface> periodic_tail(double coefficient, double half, int nodes) {
  const double period = 2.0 * half;
  const double h = period / nodes;
  std::vector<double> eta, slope, curvature;
  for (int j = 0; j <= nodes; ++j) {
    const double x = -half + j * h;
    const double s = std::sin(pi * x / period);
    const double k = pi / period;
    if (std::abs(s) < 1e-12) {
      eta.push_back(0.0);
      slope.push_back(0.0);
      curvature.push_back(0.0);
      continue;
    }
    const double cot = std::cos(pi * x / period) / s;
    const double v = coefficient * k * k / (s * s);
    eta.push_back(v);
    slope.push_back(-2.0 * k * cot * v);
    curvature.push_back(v * k * k * (6.0 * cot * cot + 2.0));
  }
  return std::make_shared<SampledSurface>(-half, h, eta, slope, curvature, period);
}

}  // namespace

TEST_SUITE("tail") {
  TEST_CASE("2D tail model is -c a / (g x^2)") {
    const auto p = make_params(2.0, 1.0, vec({1.5, 0.0}), 2, 0.5);
    const Vec a = vec({-0.4, 0.0});
    CHECK(tail::eta_tail_model(vec({10.0}), a, p) == doctest::Approx(0.6 / (2.0 * 100.0)));
    CHECK(tail::eta_tail_model(vec({-10.0}), a, p) == doctest::Approx(0.6 / (2.0 * 100.0)));
  }

  TEST_CASE("3D tail model has the dipole angular pattern") {
    const auto p = make_params(1.0, 1.0, vec({1.0, 0.0, 0.0}), 3, 0.5);
    const Vec a = vec({-1.0, 0.0, 0.0});
    // along c: (c.a - 3 c.a) / r^3 ; across c: c.a / r^3
    CHECK(tail::eta_tail_model(vec({2.0, 0.0}), a, p) == doctest::Approx(2.0 / 8.0));
    CHECK(tail::eta_tail_model(vec({0.0, 2.0}), a, p) == doctest::Approx(-1.0 / 8.0));
  }

  TEST_CASE("image sum of inverse squares has the closed form") {
    for (double x : {0.5, 7.0, 33.0}) {
      CHECK(tail::power_profile(x, 2.0, 100.0) ==
            doctest::Approx(tail::inverse_square_profile(x, 100.0)).epsilon(1e-6));
    }
    CHECK(tail::power_profile(3.0, 2.5, 0.0) == doctest::Approx(std::pow(3.0, -2.5)));
  }

  TEST_CASE("exponent fit on a periodized tail") {
    const auto s = periodic_tail(0.25, 200.0, 4096);
    const auto fit = tail::fit_decay_exponent(*s, {30.0, 70.0});
    CHECK(fit.periodic);
    CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-3));
    const auto coef = tail::fit_tail_coefficient(*s, {30.0, 70.0});
    CHECK(coef.coefficient == doctest::Approx(0.25).epsilon(1e-6));
  }

  TEST_CASE("sign change in the window is a degenerate fit") {
    const AnalyticSurface s(2, [](const Vec& xh) { return std::cos(0.3 * xh(0)) / (1.0 + xh(0) * xh(0)); });
    CHECK(error_of([&] { tail::fit_decay_exponent(s, {30.0, 70.0}); }) == ErrorCode::degenerate_fit);
  }

  TEST_CASE("window outside the data") {
    const auto s = periodic_tail(0.25, 50.0, 512);
    CHECK(error_of([&] { tail::fit_decay_exponent(*s, {30.0, 70.0}); }) == ErrorCode::out_of_range);
  }

  TEST_CASE("angular means and remainders") {
    const auto p3 = make_params(1.0, 1.0, vec({1.2, 0.0, 0.0}), 3, 0.5);
    const Vec a3 = vec({-0.3, 0.4, 0.0});
    CHECK(tail::model_angular_mean(a3, p3, 20.0) == doctest::Approx(0.36 / (2.0 * 8000.0)));
    CHECK(tail::model_angular_mean_quadrature(a3, p3, 20.0, 64) ==
          doctest::Approx(tail::model_angular_mean(a3, p3, 20.0)).epsilon(1e-12));
    const auto p2 = make_params(1.0, 1.0, vec({1.2, 0.0}), 2, 0.5);
    CHECK(tail::model_remainder(vec({-0.3, 0.0}), p2, 40.0) == doctest::Approx(2.0 * 0.36 / 40.0));
    CHECK(tail::model_remainder(a3, p3, 40.0) == doctest::Approx(pi * 0.36 / 40.0));
  }

  TEST_CASE("cross-check flags disagreement and a wrong sign") {
    const auto p = make_params(1.0, 1.0, vec({1.0, 0.0}), 2, 0.5);
    const auto e1 = make_dipole_estimate(vec({-0.20, 0.0}), DipoleMethod::energy, 0.0);
    const auto e2 = make_dipole_estimate(vec({-0.21, 0.0}), DipoleMethod::tail, 0.0);
    const auto bad = make_dipole_estimate(vec({0.2, 0.0}), DipoleMethod::kelvin, 0.0);
    const auto ok = tail::crosscheck_dipole({e1, e2}, p, 0.2);
    CHECK(ok.max_deviation == doctest::Approx(0.01 / 0.21));
    CHECK(ok.sign_ok);
    CHECK(ok.tail_positive.value());
    const auto wrong = tail::crosscheck_dipole({e1, bad}, p, -0.2);
    CHECK_FALSE(wrong.sign_ok);
    CHECK_FALSE(wrong.tail_positive.value());
    CHECK_FALSE(wrong.violations.empty());
  }
}
