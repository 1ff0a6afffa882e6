#include "support.hpp"

#include "deepwave/spectral.hpp"

#include <cmath>
#include <numbers>

using namespace deepwave;
using spectral::Samples;

namespace {

Samples sampled(int n, double half, double (*f)(double)) {
  Samples u(n);
  for (int j = 0; j < n; ++j) u(j) = f(-half + j * 2.0 * half / n);
  return u;
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("hilbert maps cos to sin") {
    const double pi = std::numbers::pi;
    const spectral::Transform fft(64, pi);
    const Samples c = sampled(64, pi, [](double x) { return std::cos(3.0 * x); });
    const Samples s = sampled(64, pi, [](double x) { return std::sin(3.0 * x); });
    CHECK((fft.hilbert(c) - s).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((spectral::hilbert(c) - s).cwiseAbs().maxCoeff() < 1e-14);
  }

  TEST_CASE("hilbert squared is minus the identity on mean-free data") {
    const spectral::Transform fft(128, 10.0);
    Samples u = sampled(128, 10.0, [](double x) { return std::exp(-x * x) * std::sin(2.0 * x) + 0.3 * std::cos(x); });
    u.array() -= u.mean();
    // one pass first: the multiplier drops the Nyquist mode
    const Samples hu = fft.hilbert(u);
    CHECK((fft.hilbert(fft.hilbert(hu)) + hu).cwiseAbs().maxCoeff() < 1e-13);
  }

  TEST_CASE("derivative of a resolved mode") {
    const double half = 5.0;
    const spectral::Transform fft(64, half);
    const double k = fft.wavenumber(4);
    Samples u(64), du(64), d2u(64);
    for (int j = 0; j < 64; ++j) {
      const double x = -half + j * fft.spacing();
      u(j) = std::sin(k * x);
      du(j) = k * std::cos(k * x);
      d2u(j) = -k * k * std::sin(k * x);
    }
    CHECK((fft.derivative(u) - du).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((fft.derivative(u, 2) - d2u).cwiseAbs().maxCoeff() < 1e-11);
  }

  TEST_CASE("forward and inverse round trip") {
    const spectral::Transform fft(32, 1.0);
    const Samples u = Samples::LinSpaced(32, -1.0, 2.0);
    CHECK((fft.inverse(fft.forward(u)) - u).cwiseAbs().maxCoeff() < 1e-14);
  }

  TEST_CASE("power-of-two sizes") {
    CHECK(spectral::is_power_of_two(1024));
    CHECK_FALSE(spectral::is_power_of_two(1000));
    CHECK_THROWS_AS(spectral::hilbert(Samples::Zero(12)), Error);
  }

  TEST_CASE("transforms can be moved") {
    spectral::Transform a(16, 1.0);
    spectral::Transform b = std::move(a);
    CHECK(b.size() == 16);
  }
}
