#include "ramanbeat/core/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ramanbeat/core/units.hpp"

namespace ramanbeat {

TimeGrid::TimeGrid(double origin, double dt, std::size_t n) : origin_(origin), dt_(dt), n_(n) {
  if (!std::isfinite(origin)) throw std::invalid_argument("grid origin must be finite");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("grid step must be positive");
  if (n < 2) throw std::invalid_argument("grid needs at least two points");
}

TimeGrid TimeGrid::centered(std::size_t n, double dt) {
  return TimeGrid(-static_cast<double>(n / 2) * dt, dt, n);
}

bool TimeGrid::is_power_of_two() const { return (n_ & (n_ - 1)) == 0; }

double TimeGrid::domega() const { return 2.0 * constants::pi / window(); }

double TimeGrid::omega(std::size_t k) const {
  const auto sk = static_cast<double>(k);
  return (k <= n_ / 2 ? sk : sk - static_cast<double>(n_)) * domega();
}

double TimeGrid::nyquist() const { return constants::pi / dt_; }

std::vector<double> TimeGrid::times() const {
  std::vector<double> t(n_);
  for (std::size_t k = 0; k < n_; ++k) t[k] = time(k);
  return t;
}

std::vector<double> TimeGrid::omegas() const {
  std::vector<double> w(n_);
  for (std::size_t k = 0; k < n_; ++k) w[k] = omega(k);
  return w;
}

void require_power_of_two(const TimeGrid& grid) {
  if (!grid.is_power_of_two())
    throw std::invalid_argument("spectral operations need a power-of-two grid, got n = " +
                                std::to_string(grid.size()));
}

}  // namespace ramanbeat
