#pragma once

#include <cstddef>
#include <vector>

namespace ramanbeat {

/// Uniform local-time grid tau_k = origin + k*dt, k = 0..n-1.
///
/// Spectral operations treat the grid as one period of length n*dt, so the
/// frequency resolution is 2*pi/(n*dt) and bins are stored in FFT order.
class TimeGrid {
 public:
  TimeGrid(double origin, double dt, std::size_t n);

  /// Grid of n points spaced dt with tau = 0 at index n/2.
  static TimeGrid centered(std::size_t n, double dt);

  double origin() const { return origin_; }
  double dt() const { return dt_; }
  std::size_t size() const { return n_; }
  double time(std::size_t k) const { return origin_ + static_cast<double>(k) * dt_; }
  double back() const { return time(n_ - 1); }
  /// (n-1)*dt
  double span() const { return static_cast<double>(n_ - 1) * dt_; }
  /// n*dt, the periodic window used by spectral operations.
  double window() const { return static_cast<double>(n_) * dt_; }
  bool is_power_of_two() const;

  double domega() const;
  /// Angular frequency of FFT bin k (negative for k > n/2).
  double omega(std::size_t k) const;
  /// Highest resolved angular frequency pi/dt.
  double nyquist() const;

  std::vector<double> times() const;
  std::vector<double> omegas() const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double origin_;
  double dt_;
  std::size_t n_;
};

void require_power_of_two(const TimeGrid& grid);

}  // namespace ramanbeat
