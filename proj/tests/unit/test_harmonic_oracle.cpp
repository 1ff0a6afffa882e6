#include "support.hpp"

#include "deepwave/harmonic_oracle.hpp"

#include <cmath>
#include <complex>

using namespace deepwave;
using deepwave::testing::error_of;
using deepwave::testing::vec;

TEST_SUITE("harmonic_oracle") {
  TEST_CASE("dipole gradient matches finite differences") {
    for (const Vec& a : {vec({0.3, -0.7}), vec({0.3, -0.7, 0.4})}) {
      const int n = static_cast<int>(a.size());
      const oracle::Dipole d(a);
      Point x = Point::Constant(n, 0.8);
      x(n - 1) = -1.3;
      CHECK((d.gradient(x) - oracle::fd_gradient(d, x, 1e-5)).norm() < 1e-9);
    }
  }

  TEST_CASE("oracle fields are harmonic and the radial quadratic is not") {
    const auto f = oracle::superpose(
        {{1.0, std::make_shared<oracle::Dipole>(vec({0.2, 0.5, -0.1}), vec({0.0, 0.3, 1.0}))},
         {2.0, std::make_shared<oracle::Linear>(vec({1.0, -2.0, 0.5}))},
         {1.0, std::make_shared<oracle::Constant>(3.0, 3)}});
    const Point x = vec({0.4, -0.2, -1.1});
    CHECK(std::abs(oracle::laplacian_residual(*f, x, 1e-3)) < 1e-4);
    CHECK(oracle::laplacian_residual(oracle::RadialQuadratic(3), x, 1e-3) ==
          doctest::Approx(6.0).epsilon(1e-6));
  }

  TEST_CASE("fractional multipole decays with its power") {
    const oracle::FractionalMultipole2D f({0.7, -0.2}, 1.5, 0.5);
    const Point near = vec({10.0, -10.0});
    const Point far = vec({100.0, -100.0});
    CHECK(std::abs(oracle::laplacian_residual(f, near, 1e-2)) < 1e-8);
    CHECK(std::abs(f.value(far) / f.value(near)) == doctest::Approx(std::pow(10.0, -1.5)).epsilon(2e-2));
  }

  TEST_CASE("periodic images equal the truncated image sum") {
    const Vec a = vec({-0.4, 0.1});
    const double period = 20.0;
    const oracle::PeriodicDipoleImages images(a, period);
    const Point x = vec({3.0, -4.0});
    // Pair +m with -m so the conditionally convergent sum converges; the
    // truncation error is O(1/M), removed by extrapolating from M and 2M.
    const auto partial = [&](int terms) {
      double sum = 0.0;
      for (int m = 1; m <= terms; ++m) {
        for (int s : {-1, 1}) {
          Point shifted = x;
          shifted(0) += s * m * period;
          sum += oracle::dipole_value(a, shifted, 2);
        }
      }
      return sum;
    };
    const double sum = 2.0 * partial(200000) - partial(100000);
    CHECK(images.value(x) == doctest::Approx(sum).epsilon(1e-8));
    CHECK((images.gradient(x) - oracle::fd_gradient(images, x, 1e-5)).norm() < 1e-9);
  }

  TEST_CASE("boundary-compatible field has zero normal derivative on y = 0") {
    const auto f = oracle::boundary_compatible_field(vec({0.6, -0.3, 0.0}), 3);
    CHECK(std::abs(f->gradient(vec({1.2, -0.7, 0.0}))(2)) < 1e-15);
    CHECK(error_of([] { oracle::boundary_compatible_field(vec({0.6, 0.3}), 2); }) ==
          ErrorCode::invalid_argument);
  }

  TEST_CASE("finite differences refuse to straddle a singularity") {
    const oracle::Dipole d(vec({1.0, 0.0}));
    CHECK(error_of([&] { oracle::laplacian_residual(d, vec({1e-4, 0.0}), 1e-3); }) ==
          ErrorCode::singularity);
  }
}
