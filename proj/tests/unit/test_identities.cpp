#include "support.hpp"

#include "deepwave/harmonic_oracle.hpp"
#include "deepwave/identities.hpp"

#include <cmath>
#include <numbers>

using namespace deepwave;
using deepwave::testing::error_of;
using deepwave::testing::vec;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_SUITE("identities") {
  TEST_CASE("field A evaluated by hand") {
    const auto p = make_params(1.0, 1.0, vec({1.0, 0.0}), 2, 0.5);
    const Vec a = identities::field_A(0.0, vec({0.0, 1.0}), vec({0.0, 0.0}), p);
    CHECK(a(0) == doctest::Approx(1.0));
    CHECK(a(1) == doctest::Approx(-0.5));
    const Vec c = identities::field_C(vec({0.0, 1.0}), p);
    CHECK(c(0) == doctest::Approx(1.0));
    CHECK(c(1) == doctest::Approx(-0.5));
  }

  TEST_CASE("divergence residuals shrink like h squared for a harmonic field") {
    const auto p = make_params(1.0, 1.0, vec({1.3, 0.0, 0.0}), 3, 0.5);
    const oracle::Dipole f(vec({0.5, -0.2, 0.3}), vec({0.2, 0.1, 0.8}));
    const Point x = vec({0.4, -0.3, -1.0});
    const double ra = identities::divergence_residual_A(f, x, 1e-2, p) /
                      identities::divergence_residual_A(f, x, 1e-3, p);
    const double rc = identities::divergence_residual_C(f, x, 1e-2, p) /
                      identities::divergence_residual_C(f, x, 1e-3, p);
    CHECK(ra == doctest::Approx(100.0).epsilon(0.05));
    CHECK(rc == doctest::Approx(100.0).epsilon(0.05));
  }

  TEST_CASE("non-harmonic control breaks the divergence identity") {
    const auto p = make_params(1.0, 1.0, vec({1.0, 0.0}), 2, 0.5);
    const oracle::RadialQuadratic f(2);
    CHECK(identities::divergence_residual_A(f, vec({0.5, -1.0}), 1e-3, p) > 1.0);
  }

  TEST_CASE("hemisphere constants") {
    CHECK(identities::hemisphere_quadratic_integral(vec({1, 0}), vec({1, 0}), 2, 32) ==
          doctest::Approx(pi / 2).epsilon(1e-12));
    CHECK(identities::hemisphere_quadratic_integral(vec({1, 0, 0}), vec({1, 0, 0}), 3, 32) ==
          doctest::Approx(2 * pi / 3).epsilon(1e-12));
    const Vec p2 = identities::hemisphere_position_integral(2, 32);
    const Vec p3 = identities::hemisphere_position_integral(3, 32);
    CHECK((p2 - vec({0, -2})).norm() < 1e-12);
    CHECK((p3 - vec({0, 0, -pi})).norm() < 1e-12);
  }

  TEST_CASE("angular momentum of a pure dipole is the limit at every radius") {
    for (const Vec& a : {vec({-0.3, 0.0}), vec({-0.3, 0.2, 0.0})}) {
      const int n = static_cast<int>(a.size());
      const oracle::Dipole f(a);
      const Vec limit = identities::angular_momentum_limit(a, n);
      for (double r : {5.0, 50.0}) {
        CHECK((identities::angular_momentum_shell(f, r, n) - limit).norm() < 1e-12);
      }
    }
    // 2D: (a_1, a_2) x e_y is a_1, scaled by 2
    CHECK(identities::angular_momentum_limit(vec({-0.3, 0.0}), 2)(0) == doctest::Approx(-0.6));
    // 3D: a x e_y with e_y the last axis
    const Vec l3 = identities::angular_momentum_limit(vec({-0.3, 0.2, 0.0}), 3);
    CHECK((l3 - pi * vec({0.2, 0.3, 0.0})).norm() < 1e-14);
  }

  TEST_CASE("shell series extrapolates L + B / r") {
    std::vector<double> r{30, 40, 50, 60, 70}, v;
    for (double x : r) v.push_back(-0.34 + 0.5 / x);
    const auto s = identities::make_shell_series(r, v);
    CHECK(s.limit_estimate == doctest::Approx(-0.34).epsilon(1e-12));
    CHECK(s.spread == doctest::Approx(0.5 / 50 - 0.5 / 70));
  }

  TEST_CASE("volume energy of an elevated dipole") {
    const double h = 1.0, r = 60.0;
    const Vec a = vec({0.8, -0.3});
    const oracle::Dipole f(a, vec({0.0, h}));
    const double expected = pi * a.squaredNorm() / (8 * h * h) - pi * a.squaredNorm() / (4 * r * r);
    CHECK(identities::kinetic_energy_volume(f, FlatSurface(2), r) ==
          doctest::Approx(expected).epsilon(1e-3));
  }

  TEST_CASE("shell flux of A closes the energy balance for an elevated dipole") {
    // Flat surface and c . n = 0 are incompatible with this field, so compare
    // against the divergence theorem with the surface flux done by quadrature.
    const auto p = make_params(1.0, 1.0, vec({1.0, 0.0}), 2, 0.5);
    const oracle::Dipole f(vec({0.8, -0.3}), vec({0.0, 1.0}));
    const double r = 20.0;
    const double volume = 2.0 * identities::kinetic_energy_volume(f, FlatSurface(2), r);
    const auto patch = identities::surface_patch(FlatSurface(2), r, 32, 0.25);
    double surface = 0.0;
    for (const auto& node : patch.nodes) {
      const Point x = vec({node.x(0), 0.0});
      surface += node.weight * identities::field_A(f.value(x), f.gradient(x), x, p)(1);
    }
    CHECK(surface + identities::shell_flux_A(f, FlatSurface(2), r, p, 96) ==
          doctest::Approx(volume).epsilon(1e-6));
  }

  TEST_CASE("surface patch of a flat surface") {
    CHECK(identities::surface_patch(FlatSurface(2), 5.0).area() == doctest::Approx(10.0));
    CHECK(identities::surface_patch(FlatSurface(3), 5.0).area() == doctest::Approx(25.0 * pi).epsilon(1e-6));
  }

  TEST_CASE("excess mass with an exact remainder") {
    const AnalyticSurface bump(2, [](const Vec& xh) { return 1.0 / (1.0 + xh.squaredNorm()); });
    const auto m = identities::excess_mass(bump, 30.0, [](double w) { return pi - 2.0 * std::atan(w); });
    CHECK(m.value == doctest::Approx(pi).epsilon(1e-10));
    CHECK(m.uncertainty < 1e-10);
    CHECK(identities::absolute_mass(bump, 30.0) == doctest::Approx(2.0 * std::atan(30.0)).epsilon(1e-10));
  }

  TEST_CASE("boundary terms vanish on a flat surface") {
    const auto p = make_params(1.0, 1.0, vec({1.0, 0.0, 0.0}), 3, 0.5);
    const auto b = identities::surface_boundary_flux(FlatSurface(3), p, 10.0);
    CHECK(b.capillary == 0.0);
    CHECK(b.advective == 0.0);
  }

  TEST_CASE("kinetic identity and its inverse") {
    const Vec c = vec({1.2, 0.0});
    const Vec a = vec({-0.25, 0.0});
    const double ke = -kinetic_constant(2) * c.dot(a);
    CHECK(identities::verify_kinetic_identity(ke, a, c, 2) < 1e-15);
    CHECK(identities::verify_kinetic_identity(ke, 1.1 * a, c, 2) == doctest::Approx(0.1));
    const auto e = identities::dipole_from_kinetic(ke, c, 2);
    CHECK(e.a(0) == doctest::Approx(a(0)));
    CHECK(identities::dipole_from_kinetic(1.0, vec({1.0, 0.0, 0.0}), 3).transverse_known == false);
    CHECK(error_of([&] { identities::verify_kinetic_identity(-1.0, a, c, 2); }) ==
          ErrorCode::invalid_argument);
  }
}
