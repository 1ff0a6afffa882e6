#include "support.hpp"

#include "deepwave/identities.hpp"
#include "deepwave/solver2d.hpp"
#include "deepwave/spectral.hpp"
#include "deepwave/wave_field.hpp"

#include <cmath>
#include <numbers>

using namespace deepwave;
using deepwave::testing::error_of;
using deepwave::testing::small_wave;
using solver::Samples;

TEST_SUITE("solver2d") {
  TEST_CASE("phase speed has its minimum at k = sqrt(g / sigma)") {
    const double g = 2.0, sigma = 0.5;
    const double c_min = solver::minimum_speed(g, sigma);
    CHECK(c_min == doctest::Approx(std::pow(4.0 * g * sigma, 0.25)));
    CHECK(solver::dispersion_speed(std::sqrt(g / sigma), g, sigma) == doctest::Approx(c_min));
    for (double k : {0.1, 0.5, 1.0, 3.0, 10.0}) {
      CHECK(solver::dispersion_speed(k, g, sigma) >= c_min * (1.0 - 1e-15));
    }
  }

  TEST_CASE("linearized residual on the flat state is the dispersion symbol") {
    const int n = 128;
    const double half = 16.0 * std::numbers::pi;
    const spectral::Transform fft(n, half);
    for (double k : {0.5, 1.0, 2.0}) {
      Samples mode(n);
      for (int j = 0; j < n; ++j) mode(j) = std::cos(k * (-half + j * fft.spacing()));
      for (double speed : {solver::dispersion_speed(k, 1.0, 1.0), 1.3}) {
        const auto p = make_params(1.0, 1.0, horizontal_speed(speed, 2), 2, 0.5);
        const Samples d = solver::linearized_residual(p, fft, Samples::Zero(n), mode);
        const double expected = 1.0 + k * k - speed * speed * k;
        CHECK((d - expected * mode).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }

  TEST_CASE("linearization matches a finite difference of the residual") {
    const auto& w = small_wave();
    const spectral::Transform fft(w.N, w.L);
    Samples dy(w.N);
    for (int j = 0; j < w.N; ++j) dy(j) = std::exp(-0.05 * w.xi(j) * w.xi(j));
    const double h = 1e-6;
    const Samples fd = (solver::bernoulli_residual(w.params, fft, w.y + h * dy) -
                        solver::bernoulli_residual(w.params, fft, w.y - h * dy)) /
                       (2.0 * h);
    const Samples exact = solver::linearized_residual(w.params, fft, w.y, dy);
    CHECK((fd - exact).cwiseAbs().maxCoeff() < 1e-6 * exact.cwiseAbs().maxCoeff());
  }

  TEST_CASE("flat state has zero residual") {
    const auto p = solver::wave_params(1.0, 1.0, 1.2);
    CHECK(solver::bernoulli_residual(solver::flat_wave(p, 64, 10.0)).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("converged depression wave") {
    const auto& w = small_wave();
    CHECK(w.residual_max <= 1e-10);
    CHECK(solver::bernoulli_residual(w).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(solver::symmetry_defect(w.y) < 1e-12);
    CHECK(w.y(w.N / 2) < 0.0);
    CHECK(solver::wave_energy(w) > 0.0);
    CHECK(std::abs(solver::wave_mass(w)) < 1e-10);
  }

  TEST_CASE("energy agrees with volume quadrature") {
    const auto& w = small_wave();
    const auto series = std::make_shared<ConformalSeries>(w);
    const double volume =
        identities::kinetic_energy_volume(WaveField(series), WaveSurface(series), 40.0);
    CHECK(volume == doctest::Approx(solver::wave_energy(w)).epsilon(5e-3));
  }

  TEST_CASE("cosine coefficients reconstruct the samples") {
    const auto& w = small_wave();
    const auto a = solver::cosine_coefficients(w);
    for (int j : {0, w.N / 4, w.N / 2, w.N / 2 + 7}) {
      double y = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) y += a[k] * std::cos(k * std::numbers::pi * w.xi(j) / w.L);
      CHECK(y == doctest::Approx(w.y(j)).epsilon(1e-10).scale(1.0));
    }
  }

  TEST_CASE("extending the box keeps the wave") {
    const auto& w = small_wave();
    solver::SolverConfig config;
    const auto wide = solver::extend_box(w, 2.0 * w.L, config);
    CHECK(wide.N == 2 * w.N);
    CHECK(wide.residual_max <= 1e-10);
    CHECK(solver::wave_energy(wide) == doctest::Approx(solver::wave_energy(w)).epsilon(1e-2));
    CHECK(error_of([&] { solver::extend_box(w, 1.5 * w.L, config); }) == ErrorCode::invalid_argument);
  }

  TEST_CASE("solver rejects speeds outside the solitary range") {
    solver::SolverConfig config;
    config.N = 64;
    config.L = 10.0;
    const Samples guess = Samples::Zero(64);
    CHECK(error_of([&] { solver::solve_wave(solver::wave_params(1.0, 1.0, 1.5), config, guess); }) ==
          ErrorCode::out_of_range);
    CHECK(error_of([&] { solver::solve_wave(solver::wave_params(1.0, 0.0, 0.5), config, guess); }) ==
          ErrorCode::invalid_argument);
    config.N = 100;
    CHECK(error_of([&] { solver::validate(config); }) == ErrorCode::invalid_argument);
  }

  TEST_CASE("non-convergence is reported") {
    solver::SolverConfig config;
    config.N = 256;
    config.L = 50.0;
    config.max_iterations = 1;
    const auto p = solver::wave_params(1.0, 1.0, 0.9 * std::sqrt(2.0));
    const Samples guess = solver::depression_guess(p, config.N, config.L, 2.4);
    CHECK(error_of([&] { solver::solve_wave(p, config, guess); }) == ErrorCode::non_convergence);
  }
}
