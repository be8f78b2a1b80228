#include "qhydro/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace qhydro::spectral {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(void* p) { return static_cast<fftw_complex*>(p); }
fftw_plan as_plan(void* p) { return static_cast<fftw_plan>(p); }

}  // namespace

Workspace::Workspace(std::size_t n) : n_(n) {
  const int len = static_cast<int>(n);
  std::lock_guard lock(planner_mutex());
  real_buf_ = fftw_alloc_real(n);
  half_buf_ = fftw_alloc_complex(n / 2 + 1);
  cplx_in_ = fftw_alloc_complex(n);
  cplx_out_ = fftw_alloc_complex(n);
  r2c_ = fftw_plan_dft_r2c_1d(len, real_buf_, as_fftw(half_buf_), FFTW_ESTIMATE);
  c2r_ = fftw_plan_dft_c2r_1d(len, as_fftw(half_buf_), real_buf_, FFTW_ESTIMATE);
  c2c_fwd_ = fftw_plan_dft_1d(len, as_fftw(cplx_in_), as_fftw(cplx_out_), FFTW_FORWARD,
                              FFTW_ESTIMATE);
  c2c_bwd_ = fftw_plan_dft_1d(len, as_fftw(cplx_in_), as_fftw(cplx_out_), FFTW_BACKWARD,
                              FFTW_ESTIMATE);
}

Workspace::~Workspace() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(as_plan(r2c_));
  fftw_destroy_plan(as_plan(c2r_));
  fftw_destroy_plan(as_plan(c2c_fwd_));
  fftw_destroy_plan(as_plan(c2c_bwd_));
  fftw_free(real_buf_);
  fftw_free(half_buf_);
  fftw_free(cplx_in_);
  fftw_free(cplx_out_);
}

void Workspace::forward(std::span<const double> in, std::span<std::complex<double>> out) {
  std::copy(in.begin(), in.end(), real_buf_);
  fftw_execute(as_plan(r2c_));
  const auto* h = reinterpret_cast<const std::complex<double>*>(half_buf_);
  std::copy(h, h + half_size(), out.begin());
}

void Workspace::inverse(std::span<const std::complex<double>> in, std::span<double> out) {
  auto* h = reinterpret_cast<std::complex<double>*>(half_buf_);
  std::copy(in.begin(), in.begin() + static_cast<long>(half_size()), h);
  fftw_execute(as_plan(c2r_));
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = real_buf_[i] * scale;
}

void Workspace::forward(std::span<const std::complex<double>> in,
                        std::span<std::complex<double>> out) {
  auto* ci = reinterpret_cast<std::complex<double>*>(cplx_in_);
  std::copy(in.begin(), in.end(), ci);
  fftw_execute(as_plan(c2c_fwd_));
  const auto* co = reinterpret_cast<const std::complex<double>*>(cplx_out_);
  std::copy(co, co + n_, out.begin());
}

void Workspace::inverse(std::span<const std::complex<double>> in,
                        std::span<std::complex<double>> out) {
  auto* ci = reinterpret_cast<std::complex<double>*>(cplx_in_);
  std::copy(in.begin(), in.end(), ci);
  fftw_execute(as_plan(c2c_bwd_));
  const auto* co = reinterpret_cast<const std::complex<double>*>(cplx_out_);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = co[i] * scale;
}

Workspace& workspace(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<Workspace>> cache;
  thread_local Workspace* last = nullptr;
  if (last && last->size() == n) return *last;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Workspace>(n);
  last = slot.get();
  return *slot;
}

}  // namespace qhydro::spectral
