#include "ramanbeat/core/interpolation.hpp"

#include <cmath>
// Boost 1.74 pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <stdexcept>

namespace ramanbeat {

struct MonotoneCubic::Impl {
  boost::math::interpolators::pchip<std::vector<double>> spline;
  double t0;
  double t1;
};

MonotoneCubic::MonotoneCubic(const TimeGrid& grid, const std::vector<double>& values) {
  if (values.size() != grid.size()) throw std::invalid_argument("interpolant values do not match grid");
  if (values.size() < 4) throw std::invalid_argument("monotone cubic needs at least four samples");
  front_ = values.front();
  back_ = values.back();
  impl_ = std::make_unique<Impl>(Impl{boost::math::interpolators::pchip<std::vector<double>>(grid.times(), std::vector<double>(values)),
                                      grid.origin(), grid.back()});
}

MonotoneCubic::~MonotoneCubic() = default;
MonotoneCubic::MonotoneCubic(MonotoneCubic&&) noexcept = default;
MonotoneCubic& MonotoneCubic::operator=(MonotoneCubic&&) noexcept = default;

double MonotoneCubic::operator()(double t) const {
  if (t <= impl_->t0) return front_;
  if (t >= impl_->t1) return back_;
  return impl_->spline(t);
}

}  // namespace ramanbeat
