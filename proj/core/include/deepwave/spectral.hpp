#pragma once

#include <Eigen/Core>

#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace deepwave::spectral {

using Samples = Eigen::VectorXd;

/// Real-to-complex FFT pair on N uniform samples of [-L, L). Plans are made
/// once with FFTW_ESTIMATE and executed on caller buffers, so a const
/// Transform may be shared between threads.
class Transform {
 public:
  Transform(int n, double half_length);
  ~Transform();
  Transform(const Transform&) = delete;
  Transform& operator=(const Transform&) = delete;
  Transform(Transform&&) noexcept;
  Transform& operator=(Transform&&) noexcept;

  int size() const { return n_; }
  double half_length() const { return half_length_; }
  double spacing() const { return 2.0 * half_length_ / n_; }
  /// Angular wavenumber of mode m, m * pi / L.
  double wavenumber(int m) const;

  /// Unnormalized forward transform: N/2 + 1 coefficients.
  std::vector<std::complex<double>> forward(const Samples& u) const;
  /// Inverse of forward(), including the 1/N factor.
  Samples inverse(std::vector<std::complex<double>> coeffs) const;

  /// Applies the Fourier multiplier symbol(k) with k the signed angular
  /// wavenumber of each nonnegative mode; the Nyquist mode is dropped.
  Samples apply(const Samples& u,
                const std::function<std::complex<double>(double)>& symbol) const;

  /// Multiplier -i sgn(k): cos -> sin, constants -> 0.
  Samples hilbert(const Samples& u) const;
  /// order-th derivative in the periodic coordinate.
  Samples derivative(const Samples& u, int order = 1) const;

 private:
  struct Plans;
  int n_;
  double half_length_;
  std::unique_ptr<Plans> plans_;
};

bool is_power_of_two(int n);

/// Hilbert transform on a period of length 2 pi sampled at u.size() points.
/// The size must be a power of two.
Samples hilbert(const Samples& u);

}  // namespace deepwave::spectral
