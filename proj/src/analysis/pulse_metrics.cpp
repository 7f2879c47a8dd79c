#include <algorithm>
#include <cmath>

#include "ramanbeat/analysis/diagnostics.hpp"
#include "ramanbeat/core/errors.hpp"
#include "ramanbeat/core/pulse.hpp"

namespace ramanbeat {

namespace {

// Sub-pixel position of a local maximum from a parabola through three samples.
double refine_peak(const TimeGrid& grid, const std::vector<double>& y, std::size_t k) {
  if (k == 0 || k + 1 >= y.size()) return grid.time(k);
  const double den = y[k - 1] - 2.0 * y[k] + y[k + 1];
  if (den >= 0.0) return grid.time(k);
  return grid.time(k) + 0.5 * (y[k - 1] - y[k + 1]) / den * grid.dt();
}

double mean_frequency(const AnalyticField& field) {
  const auto s = spectrum_of(field);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 1; 2 * k <= s.size(); ++k) {
    const double p = std::norm(s[k]);
    num += s.omega(k) * p;
    den += p;
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace

PulseMetrics measure_pulse(const AnalyticField& field) {
  require_windowed(field.real_part());
  const auto& grid = field.grid();
  const auto I = field.intensity();
  const auto it = std::max_element(I.begin(), I.end());
  if (!(*it > 0.0)) throw EmptyFieldError("cannot measure an all-zero field");

  PulseMetrics m;
  m.peak_intensity = *it;
  m.peak_amplitude = std::sqrt(*it);
  m.intensity_fwhm = fwhm(grid, I);

  double sum = 0.0, first = 0.0;
  for (std::size_t k = 0; k < I.size(); ++k) {
    sum += I[k];
    first += grid.time(k) * I[k];
  }
  m.centroid = first / sum;
  // <Re(f)^2> = |f|^2 / 2 for a carrier-modulated envelope
  m.energy = 0.5 * sum * grid.dt();
  m.mean_frequency = mean_frequency(field);

  // segments above half the peak, each represented by its maximum
  const double half = 0.5 * m.peak_intensity;
  std::vector<double> peaks;
  std::size_t k = 0;
  while (k < I.size()) {
    if (I[k] <= half) {
      ++k;
      continue;
    }
    std::size_t best = k;
    for (; k < I.size() && I[k] > half; ++k)
      if (I[k] > I[best]) best = k;
    peaks.push_back(refine_peak(grid, I, best));
  }
  m.subpulses = peaks.size();
  if (peaks.size() >= 2) m.train_period = (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
  return m;
}

PulseMetrics measure_pulse(const SampledField& field) {
  require_windowed(field);
  return measure_pulse(analytic_signal(field));
}

PulseMetrics measure_pulse(const AnalyticField& field, const AnalyticField& reference) {
  auto m = measure_pulse(field);
  const double ref = intensity_fwhm(reference);
  if (!(ref > 0.0)) throw EmptyFieldError("reference field is empty");
  m.compression_factor = ref / m.intensity_fwhm;
  return m;
}

PulseMetrics measure_pulse(const SampledField& field, const SampledField& reference) {
  require_windowed(field);
  require_windowed(reference);
  return measure_pulse(analytic_signal(field), analytic_signal(reference));
}

}  // namespace ramanbeat
