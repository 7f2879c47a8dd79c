#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ramanbeat/analysis/diagnostics.hpp"

namespace ramanbeat {

double SpectralReport::at(int q) const {
  if (q < q_min || q > q_max()) return 0.0;
  return power[static_cast<std::size_t>(q - q_min)];
}

double SpectralReport::relative(int q) const {
  const double peak = power.empty() ? 0.0 : *std::max_element(power.begin(), power.end());
  return peak > 0.0 ? at(q) / peak : 0.0;
}

SpectralReport measure_spectrum(const Spectrum& spectrum, Frequency omega0, Frequency omega_m, double threshold) {
  const double w0 = omega0.value(), wm = omega_m.value();
  if (!(wm > 0.0) || !(w0 > 0.0)) throw std::invalid_argument("carrier and modulation frequency must be positive");
  if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("threshold must lie in (0, 1)");

  SpectralReport r;
  r.threshold = threshold;
  const std::size_t n = spectrum.size();
  const std::size_t top = n / 2;  // bins 0..n/2 are the non-negative frequencies
  // lowest window [w_q - wm/2, w_q + wm/2) containing omega = 0
  r.q_min = static_cast<int>(std::floor((0.0 - w0) / wm + 0.5));
  const int q_hi = static_cast<int>(std::floor((spectrum.omega(top) - w0) / wm + 0.5));
  r.power.assign(static_cast<std::size_t>(q_hi - r.q_min + 1), 0.0);

  auto order_of = [&](double w) { return static_cast<int>(std::floor((w - w0) / wm + 0.5)); };
  for (std::size_t k = 0; k <= top; ++k) {
    const double w = k == top ? std::abs(spectrum.omega(k)) : spectrum.omega(k);
    const double p = std::norm(spectrum[k]);
    const auto i = static_cast<std::size_t>(order_of(w) - r.q_min);
    r.power[i] += p;
    r.total_power += p;
  }

  const double pmax = *std::max_element(r.power.begin(), r.power.end());
  if (!(pmax > 0.0)) {
    r.q_stokes = r.q_antistokes = 0;
    return r;
  }
  r.q_stokes = r.q_max();
  r.q_antistokes = r.q_min;
  for (int q = r.q_min; q <= r.q_max(); ++q) {
    if (r.at(q) >= threshold * pmax) {
      r.q_stokes = std::min(r.q_stokes, q);
      r.q_antistokes = std::max(r.q_antistokes, q);
    }
  }

  // Line strength: max |E|^2 within wm/4 of w_q. Valley: min |E|^2 over the
  // middle half of the gap to the next line, relative to the weaker line.
  // Only the main body of the spectrum (orders within 1% of the strongest)
  // counts; weak tails carry interference fringes.
  const double body = std::max(threshold, 1e-2) * pmax;
  auto extreme = [&](double lo, double hi, bool want_max) {
    double v = want_max ? 0.0 : INFINITY;
    for (std::size_t k = 0; k <= top; ++k) {
      const double w = spectrum.omega(k);
      if (w < lo || w > hi) continue;
      const double p = std::norm(spectrum[k]);
      v = want_max ? std::max(v, p) : std::min(v, p);
    }
    return v;
  };
  std::vector<double> ratios;
  for (int q = r.q_stokes; q < r.q_antistokes; ++q) {
    if (r.at(q) < body || r.at(q + 1) < body) continue;
    const double wq = w0 + q * wm;
    const double line = std::min(extreme(wq - wm / 4, wq + wm / 4, true), extreme(wq + 0.75 * wm, wq + 1.25 * wm, true));
    const double valley = extreme(wq + wm / 4, wq + 0.75 * wm, false);
    if (line > 0.0 && std::isfinite(valley)) ratios.push_back(valley / line);
  }
  if (!ratios.empty()) {
    auto mid = ratios.begin() + static_cast<std::ptrdiff_t>(ratios.size() / 2);
    std::nth_element(ratios.begin(), mid, ratios.end());
    r.valley_ratio = *mid;
    if (ratios.size() % 2 == 0) r.valley_ratio = 0.5 * (r.valley_ratio + *std::max_element(ratios.begin(), mid));
  }
  r.continuous = r.valley_ratio > 0.5;
  return r;
}

}  // namespace ramanbeat
