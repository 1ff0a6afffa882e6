#include "deepwave/spectral.hpp"

#include "deepwave/core_types.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace deepwave::spectral {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct Transform::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Transform::Transform(int n, double half_length)
    : n_(n), half_length_(half_length), plans_(std::make_unique<Plans>()) {
  if (!is_power_of_two(n) || n < 4) {
    throw Error(ErrorCode::invalid_argument,
                "grid size must be a power of two >= 4, got " + std::to_string(n));
  }
  if (!(half_length > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "box half-length must be positive");
  }
  std::vector<double> in(static_cast<std::size_t>(n));
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n / 2 + 1));
  auto* cin = reinterpret_cast<fftw_complex*>(out.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  plans_->r2c = fftw_plan_dft_r2c_1d(n, in.data(), cin, flags);
  plans_->c2r = fftw_plan_dft_c2r_1d(n, cin, in.data(), flags | FFTW_DESTROY_INPUT);
  if (!plans_->r2c || !plans_->c2r) {
    throw Error(ErrorCode::invalid_argument, "FFTW planning failed");
  }
}

Transform::~Transform() = default;
Transform::Transform(Transform&&) noexcept = default;
Transform& Transform::operator=(Transform&&) noexcept = default;

double Transform::wavenumber(int m) const {
  return m * std::numbers::pi / half_length_;
}

std::vector<std::complex<double>> Transform::forward(const Samples& u) const {
  if (u.size() != n_) {
    throw Error(ErrorCode::dimension_mismatch, "sample count does not match the transform");
  }
  Samples copy = u;  // r2c may not modify input, but the API takes non-const
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n_ / 2 + 1));
  fftw_execute_dft_r2c(plans_->r2c, copy.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

Samples Transform::inverse(std::vector<std::complex<double>> coeffs) const {
  if (static_cast<int>(coeffs.size()) != n_ / 2 + 1) {
    throw Error(ErrorCode::dimension_mismatch, "coefficient count does not match the transform");
  }
  Samples out(n_);
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(coeffs.data()),
                       out.data());
  out /= static_cast<double>(n_);
  return out;
}

Samples Transform::apply(const Samples& u,
                         const std::function<std::complex<double>(double)>& symbol) const {
  auto coeffs = forward(u);
  const int nyquist = n_ / 2;
  for (int m = 0; m < nyquist; ++m) {
    coeffs[static_cast<std::size_t>(m)] *= symbol(wavenumber(m));
  }
  coeffs[static_cast<std::size_t>(nyquist)] = 0.0;
  return inverse(std::move(coeffs));
}

Samples Transform::hilbert(const Samples& u) const {
  return apply(u, [](double k) {
    return k > 0.0 ? std::complex<double>(0.0, -1.0) : std::complex<double>(0.0);
  });
}

Samples Transform::derivative(const Samples& u, int order) const {
  if (order < 0) throw Error(ErrorCode::invalid_argument, "derivative order must be >= 0");
  return apply(u, [order](double k) { return std::pow(std::complex<double>(0.0, k), order); });
}

Samples hilbert(const Samples& u) {
  const auto n = static_cast<int>(u.size());
  if (!is_power_of_two(n)) {
    throw Error(ErrorCode::invalid_argument, "Hilbert transform needs a power-of-two size");
  }
  return Transform(n, std::numbers::pi).hilbert(u);
}

}  // namespace deepwave::spectral
