#include "ramanbeat/core/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ramanbeat {

double gaussian_sigma(double width, WidthConvention convention) {
  if (!(width > 0.0)) throw std::invalid_argument("pulse width must be positive");
  const double ln2 = std::log(2.0);
  switch (convention) {
    case WidthConvention::IntensityFwhm:
      return width / (2.0 * std::sqrt(ln2));
    case WidthConvention::FieldFwhm:
      return width / (2.0 * std::sqrt(2.0 * ln2));
    case WidthConvention::FieldHalfWidth1e:
      return width / std::sqrt(2.0);
  }
  throw std::invalid_argument("unknown width convention");
}

SampledField make_pulse(const TimeGrid& grid, const GaussianPulse& pulse) {
  const double sigma = gaussian_sigma(pulse.width, pulse.convention);
  const double w0 = pulse.carrier.value();
  std::vector<double> e(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid.time(k) - pulse.peak_time;
    e[k] = pulse.amplitude * std::exp(-t * t / (2.0 * sigma * sigma)) * std::cos(w0 * t + pulse.carrier_phase);
  }
  return SampledField(grid, std::move(e));
}

double fwhm(const TimeGrid& grid, std::span<const double> profile) {
  if (profile.size() != grid.size()) throw std::invalid_argument("profile does not match grid");
  const auto it = std::max_element(profile.begin(), profile.end());
  const double peak = *it;
  if (!(peak > 0.0)) return 0.0;
  const double half = 0.5 * peak;
  const std::size_t ip = static_cast<std::size_t>(it - profile.begin());

  double left = grid.origin();
  for (std::size_t k = ip; k > 0; --k) {
    if (profile[k - 1] < half) {
      const double f = (profile[k] - half) / (profile[k] - profile[k - 1]);
      left = grid.time(k) - f * grid.dt();
      break;
    }
  }
  double right = grid.back();
  for (std::size_t k = ip; k + 1 < profile.size(); ++k) {
    if (profile[k + 1] < half) {
      const double f = (profile[k] - half) / (profile[k] - profile[k + 1]);
      right = grid.time(k) + f * grid.dt();
      break;
    }
  }
  return right - left;
}

double intensity_fwhm(const AnalyticField& field) {
  const auto i = field.intensity();
  return fwhm(field.grid(), i);
}

double field_fwhm(const AnalyticField& field) {
  std::vector<double> a(field.size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = std::abs(field[k]);
  return fwhm(field.grid(), a);
}

}  // namespace ramanbeat
