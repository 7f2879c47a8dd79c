#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace ramanbeat {

using cplx = std::complex<double>;

/// 1-D complex transform pair in the e^{-i omega tau} synthesis convention.
///
/// to_frequency computes X_k = sum_j x_j exp(+2 pi i j k / n) (unnormalized);
/// to_time computes x_j = (1/n) sum_k X_k exp(-2 pi i j k / n). Input and
/// output may alias. Instances are not safe for concurrent use; create one per
/// thread.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(Fft&&) noexcept;
  Fft& operator=(Fft&&) noexcept;
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const;
  void to_frequency(std::span<const cplx> in, std::span<cplx> out);
  void to_time(std::span<const cplx> in, std::span<cplx> out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ramanbeat
