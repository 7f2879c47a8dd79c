#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ramanbeat/analysis/diagnostics.hpp"
#include "ramanbeat/core/pulse.hpp"

namespace ramanbeat {

namespace {

template <class T>
double symmetric_l2(const std::vector<T>& a, const std::vector<T>& b) {
  double diff = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    diff += std::norm(a[k] - b[k]);
    na += std::norm(a[k]);
    nb += std::norm(b[k]);
  }
  const double scale = std::max(na, nb);
  return scale > 0.0 ? std::sqrt(diff / scale) : 0.0;
}

RunComparison ratios(const AnalyticField& a, const AnalyticField& b) {
  RunComparison r;
  const auto ia = a.intensity(), ib = b.intensity();
  const double pa = *std::max_element(ia.begin(), ia.end()), pb = *std::max_element(ib.begin(), ib.end());
  if (pb > 0.0) r.peak_ratio = pa / pb;
  else if (pa > 0.0) r.peak_ratio = INFINITY;
  const double fa = fwhm(a.grid(), ia), fb = fwhm(b.grid(), ib);
  if (fb > 0.0) r.fwhm_ratio = fa / fb;
  else if (fa > 0.0) r.fwhm_ratio = INFINITY;
  return r;
}

void require_same_grid(const TimeGrid& a, const TimeGrid& b) {
  if (!(a == b)) throw std::domain_error("compare_runs needs both fields on the same grid");
}

}  // namespace

RunComparison compare_runs(const SampledField& a, const SampledField& b) {
  require_same_grid(a.grid(), b.grid());
  auto r = ratios(analytic_signal(a), analytic_signal(b));
  r.l2 = symmetric_l2(a.samples(), b.samples());
  return r;
}

RunComparison compare_runs(const AnalyticField& a, const AnalyticField& b) {
  require_same_grid(a.grid(), b.grid());
  auto r = ratios(a, b);
  r.l2 = symmetric_l2(a.samples(), b.samples());
  return r;
}

}  // namespace ramanbeat
