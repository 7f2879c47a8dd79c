#include "ramanbeat/core/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace ramanbeat {

namespace {
// Planning is not thread-safe in FFTW; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fft::Impl {
  std::size_t n = 0;
  fftw_complex* buf = nullptr;
  fftw_plan forward = nullptr;   // e^{+i}: FFTW_BACKWARD
  fftw_plan backward = nullptr;  // e^{-i}: FFTW_FORWARD

  explicit Impl(std::size_t size) : n(size) {
    std::lock_guard lock(planner_mutex());
    buf = fftw_alloc_complex(n);
    if (!buf) throw std::bad_alloc();
    const int ni = static_cast<int>(n);
    forward = fftw_plan_dft_1d(ni, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_1d(ni, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    if (!forward || !backward) throw std::runtime_error("FFTW planning failed");
  }
  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    fftw_free(buf);
  }

  void run(fftw_plan plan, std::span<const cplx> in, std::span<cplx> out, double scale) {
    if (in.size() != n || out.size() != n) throw std::invalid_argument("FFT length mismatch");
    auto* b = reinterpret_cast<cplx*>(buf);
    std::copy(in.begin(), in.end(), b);
    fftw_execute(plan);
    if (scale == 1.0) {
      std::copy(b, b + n, out.begin());
    } else {
      for (std::size_t k = 0; k < n; ++k) out[k] = b[k] * scale;
    }
  }
};

Fft::Fft(std::size_t n) : impl_(std::make_unique<Impl>(n)) {
  if (n == 0) throw std::invalid_argument("FFT length must be positive");
}
Fft::~Fft() = default;
Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

std::size_t Fft::size() const { return impl_->n; }

void Fft::to_frequency(std::span<const cplx> in, std::span<cplx> out) {
  impl_->run(impl_->forward, in, out, 1.0);
}

void Fft::to_time(std::span<const cplx> in, std::span<cplx> out) {
  impl_->run(impl_->backward, in, out, 1.0 / static_cast<double>(impl_->n));
}

}  // namespace ramanbeat
