#pragma once

#include <memory>
#include <vector>

#include "ramanbeat/core/grid.hpp"

namespace ramanbeat {

/// Shape-preserving (Fritsch-Carlson type) cubic interpolant of samples on a
/// uniform grid. Between two samples of opposite sign it has exactly one zero.
class MonotoneCubic {
 public:
  MonotoneCubic(const TimeGrid& grid, const std::vector<double>& values);
  ~MonotoneCubic();
  MonotoneCubic(MonotoneCubic&&) noexcept;
  MonotoneCubic& operator=(MonotoneCubic&&) noexcept;

  /// Evaluates inside [grid.origin(), grid.back()]; outside it clamps to the
  /// boundary sample.
  double operator()(double t) const;
  double front() const { return front_; }
  double back() const { return back_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double front_;
  double back_;
};

}  // namespace ramanbeat
