#include "support.hpp"

#include "deepwave/harmonic_oracle.hpp"
#include "deepwave/wave_field.hpp"

#include <cmath>

using namespace deepwave;
using deepwave::testing::error_of;
using deepwave::testing::small_wave;
using deepwave::testing::vec;

namespace {

struct Fixture {
  std::shared_ptr<ConformalSeries> series = std::make_shared<ConformalSeries>(small_wave());
  WaveField field{series};
  WaveSurface surface{series};
};

}  // namespace

TEST_SUITE("wave_field") {
  TEST_CASE("surface passes through the grid samples") {
    Fixture f;
    const auto& w = small_wave();
    const auto x = solver::surface_abscissa(w);
    for (int j : {w.N / 2, w.N / 2 + 3, w.N / 2 + 40, 10}) {
      CHECK(f.surface.eta(vec({x(j)})) == doctest::Approx(w.y(j)).epsilon(1e-10).scale(1.0));
    }
  }

  TEST_CASE("potential is harmonic below the surface") {
    Fixture f;
    for (const Point& x : {vec({0.3, -1.5}), vec({-4.0, -0.9}), vec({12.0, -3.0})}) {
      CHECK(std::abs(oracle::laplacian_residual(f.field, x, 1e-3)) < 1e-5);
    }
  }

  TEST_CASE("gradient matches finite differences") {
    Fixture f;
    const Point x = vec({1.7, -1.1});
    CHECK((f.field.gradient(x) - oracle::fd_gradient(f.field, x, 1e-5)).norm() < 1e-8);
  }

  TEST_CASE("kinematic and dynamic conditions hold on the surface") {
    Fixture f;
    const auto& p = small_wave().params;
    for (double x1 : {0.0, 0.8, 2.5, -6.0, 15.0}) {
      const Vec xh = vec({x1});
      const Point on = f.surface.lift(xh);
      const Vec grad = f.field.gradient(on);
      const Vec n = f.surface.normal(xh);
      CHECK(grad.dot(n) == doctest::Approx(p.c.dot(n)).epsilon(1e-9).scale(1.0));
      const double bernoulli = 0.5 * grad.squaredNorm() - p.c.dot(grad) +
                               p.g * f.surface.eta(xh) +
                               p.sigma * f.surface.normal_divergence(xh);
      CHECK(std::abs(bernoulli) < 1e-8);
      CHECK(f.surface.potential(xh) == doctest::Approx(f.field.value(on)).epsilon(1e-10).scale(1.0));
    }
  }

  TEST_CASE("points above the surface are rejected") {
    Fixture f;
    CHECK(error_of([&] { f.field.value(vec({0.0, 0.5})); }) == ErrorCode::out_of_range);
    CHECK(error_of([&] { f.field.value(vec({80.0, -1.0})); }) == ErrorCode::out_of_range);
  }
}
