#include "ramanbeat/analytic/conservation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ramanbeat {

namespace {

constexpr double kCrossingThreshold = 1e-6;

ConservedPair pair(double in, double out, double scale) {
  return {in, out, scale > 0.0 ? std::abs(out - in) / scale : 0.0};
}

// Trapezoid rule on a uniform grid.
template <class F>
double integrate(const TimeGrid& g, F&& f) {
  double s = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) s += (k == 0 || k + 1 == g.size() ? 0.5 : 1.0) * f(k);
  return s * g.dt();
}

}  // namespace

long count_zero_crossings(std::span<const double> field, std::span<const double> threshold) {
  if (field.size() != threshold.size()) throw std::invalid_argument("threshold size mismatch");
  int state = 0;  // last confirmed side: +1 above +h, -1 below -h
  long crossings = 0;
  for (std::size_t k = 0; k < field.size(); ++k) {
    const double v = field[k], h = threshold[k];
    const int side = v > h ? 1 : (v < -h ? -1 : 0);
    if (side == 0) continue;
    if (state != 0 && side != state) ++crossings;
    state = side;
  }
  return crossings;
}

ConservationReport conservation_report(const SampledField& input, const SampledField& output, Frequency omega0,
                                       const BeatParameters& p) {
  require_windowed(input);
  require_windowed(output);
  const TimeGrid& gi = input.grid();
  const TimeGrid& go = output.grid();
  const double w0 = omega0.value();
  const double photon_scale = constants::c * constants::epsilon0 / (2.0 * constants::hbar);

  std::vector<double> gain(go.size());
  for (std::size_t k = 0; k < go.size(); ++k) gain[k] = gain_profile(go.time(k), p);

  ConservationReport r;
  const double area_in = integrate(gi, [&](std::size_t k) { return input[k]; });
  const double area_out = integrate(go, [&](std::size_t k) { return output[k]; });
  const double abs_in = integrate(gi, [&](std::size_t k) { return std::abs(input[k]); });
  r.area = pair(area_in, area_out, std::max(std::abs(area_in), abs_in));

  const double n_in = photon_scale * integrate(gi, [&](std::size_t k) { return input[k] * input[k] / w0; });
  const double n_out =
      photon_scale * integrate(go, [&](std::size_t k) { return output[k] * output[k] / (gain[k] * w0); });
  r.photon_number = pair(n_in, n_out, std::abs(n_in));

  const double peak_in = input.peak();
  std::vector<double> h_in(gi.size(), kCrossingThreshold * peak_in);
  std::vector<double> h_out(go.size());
  for (std::size_t k = 0; k < go.size(); ++k) h_out[k] = kCrossingThreshold * peak_in * gain[k];
  r.oscillations_in = count_zero_crossings(input.samples(), h_in) / 2;
  r.oscillations_out = count_zero_crossings(output.samples(), h_out) / 2;

  // interval where the output is significant
  std::size_t first = go.size(), last = 0;
  for (std::size_t k = 0; k < go.size(); ++k) {
    if (std::abs(output[k]) > h_out[k]) {
      first = std::min(first, k);
      last = k;
    }
  }
  if (first < last) {
    double weight = 0.0, acc = 0.0;
    for (std::size_t k = first; k <= last; ++k) {
      const double w = k == first || k == last ? 0.5 : 1.0;
      weight += w;
      acc += w * gain[k];
    }
    const double mean_freq = w0 * (acc / weight);
    const double eta1 = go.time(first), eta2 = go.time(last);
    const double s1 = time_remap(eta1, p), s2 = time_remap(eta2, p);
    r.length_frequency = pair(w0 * (s2 - s1), mean_freq * (eta2 - eta1), std::abs(w0 * (s2 - s1)));
  }
  return r;
}

}  // namespace ramanbeat
