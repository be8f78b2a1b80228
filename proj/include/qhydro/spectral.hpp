#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qhydro::spectral {

/// FFTW plans and aligned buffers for transforms of one length.
///
/// Plans are built with FFTW_ESTIMATE so that repeated runs are bit-identical.
/// A Workspace is not shareable across threads; use workspace(n), which keeps
/// one instance per thread and length.
class Workspace {
 public:
  explicit Workspace(std::size_t n);
  ~Workspace();
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  std::size_t size() const noexcept { return n_; }
  std::size_t half_size() const noexcept { return n_ / 2 + 1; }

  /// Unnormalized real-to-half-complex transform; out has half_size() entries.
  void forward(std::span<const double> in, std::span<std::complex<double>> out);
  /// Normalized inverse of forward(); in has half_size() entries.
  void inverse(std::span<const std::complex<double>> in, std::span<double> out);

  /// Unnormalized complex transform, exp(-i k x) convention.
  void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
  /// Normalized inverse of the complex forward().
  void inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

 private:
  std::size_t n_;
  double* real_buf_;
  void* half_buf_;
  void* cplx_in_;
  void* cplx_out_;
  void* r2c_;
  void* c2r_;
  void* c2c_fwd_;
  void* c2c_bwd_;
};

/// Thread-local workspace for length n.
Workspace& workspace(std::size_t n);

/// Signed integer frequency index of FFT bin j for a length-n transform.
inline long frequency_index(std::size_t j, std::size_t n) {
  return j <= n / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n);
}

}  // namespace qhydro::spectral
