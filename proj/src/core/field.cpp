#include "ramanbeat/core/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ramanbeat/core/errors.hpp"
#include "ramanbeat/core/units.hpp"

namespace ramanbeat {

namespace {

void check_size(const TimeGrid& grid, std::size_t n) {
  if (grid.size() != n) {
    std::ostringstream os;
    os << "sample count " << n << " does not match grid size " << grid.size();
    throw std::invalid_argument(os.str());
  }
}

// Keeps DC and Nyquist once, doubles 1..n/2-1 and clears the rest, so that
// the real part of the synthesized signal equals the real input exactly.
void fold_to_positive(std::vector<cplx>& bins) {
  const std::size_t n = bins.size();
  for (std::size_t k = 1; k < n / 2; ++k) bins[k] *= 2.0;
  for (std::size_t k = n / 2 + 1; k < n; ++k) bins[k] = 0.0;
}

std::vector<cplx> transform(const std::vector<cplx>& x) {
  Fft fft(x.size());
  std::vector<cplx> out(x.size());
  fft.to_frequency(x, out);
  return out;
}

std::vector<cplx> inverse(const std::vector<cplx>& x) {
  Fft fft(x.size());
  std::vector<cplx> out(x.size());
  fft.to_time(x, out);
  return out;
}

std::vector<cplx> dft_of_real(const SampledField& f) {
  std::vector<cplx> x(f.samples().begin(), f.samples().end());
  return transform(x);
}

// E_omega = (dt/pi) e^{i omega_k t0} X_k
Spectrum spectrum_from_bins(const TimeGrid& grid, std::vector<cplx> bins) {
  const double scale = grid.dt() / constants::pi;
  for (std::size_t k = 0; k < bins.size(); ++k)
    bins[k] *= scale * std::polar(1.0, grid.omega(k) * grid.origin());
  return Spectrum(grid, std::move(bins));
}

std::vector<cplx> bins_from_spectrum(const Spectrum& s) {
  const TimeGrid& grid = s.grid();
  const double scale = constants::pi / grid.dt();
  std::vector<cplx> bins(s.amplitude());
  for (std::size_t k = 0; k < bins.size(); ++k)
    bins[k] *= scale * std::polar(1.0, -grid.omega(k) * grid.origin());
  return bins;
}

}  // namespace

SampledField::SampledField(TimeGrid grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)) {
  check_size(grid_, samples_.size());
  for (double v : samples_)
    if (!std::isfinite(v)) throw std::invalid_argument("field samples must be finite");
}

SampledField SampledField::zeros(const TimeGrid& grid) {
  return SampledField(grid, std::vector<double>(grid.size(), 0.0));
}

double SampledField::peak() const {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::abs(v));
  return m;
}

AnalyticField::AnalyticField(TimeGrid grid, std::vector<cplx> samples)
    : grid_(grid), samples_(std::move(samples)) {
  check_size(grid_, samples_.size());
  for (const cplx& v : samples_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("field samples must be finite");
}

double AnalyticField::peak() const {
  double m = 0.0;
  for (const cplx& v : samples_) m = std::max(m, std::abs(v));
  return m;
}

SampledField AnalyticField::real_part() const {
  std::vector<double> re(samples_.size());
  std::transform(samples_.begin(), samples_.end(), re.begin(), [](cplx v) { return v.real(); });
  return SampledField(grid_, std::move(re));
}

std::vector<double> AnalyticField::intensity() const {
  std::vector<double> out(samples_.size());
  std::transform(samples_.begin(), samples_.end(), out.begin(), [](cplx v) { return std::norm(v); });
  return out;
}

Spectrum::Spectrum(TimeGrid grid, std::vector<cplx> amplitude)
    : grid_(grid), amplitude_(std::move(amplitude)) {
  check_size(grid_, amplitude_.size());
}

bool is_windowed(const SampledField& field, double rel_tol) {
  const double peak = field.peak();
  if (peak == 0.0) return true;
  const double edge = std::max(std::abs(field[0]), std::abs(field[field.size() - 1]));
  return edge <= rel_tol * peak;
}

void require_windowed(const SampledField& field, double rel_tol) {
  if (!is_windowed(field, rel_tol)) {
    const double edge = std::max(std::abs(field[0]), std::abs(field[field.size() - 1]));
    std::ostringstream os;
    os << "field is not windowed: edge/peak = " << edge / field.peak() << " exceeds " << rel_tol;
    throw WindowingError(os.str());
  }
}

AnalyticField analytic_signal(const SampledField& field) {
  require_windowed(field);
  require_power_of_two(field.grid());
  auto bins = dft_of_real(field);
  fold_to_positive(bins);
  return AnalyticField(field.grid(), inverse(bins));
}

AnalyticField project_positive(const AnalyticField& field) {
  require_power_of_two(field.grid());
  auto bins = transform(field.samples());
  const std::size_t n = bins.size();
  bins[0] = 0.0;
  for (std::size_t k = n / 2 + 1; k < n; ++k) bins[k] = 0.0;
  return AnalyticField(field.grid(), inverse(bins));
}

Spectrum spectrum_of(const SampledField& field) {
  require_windowed(field);
  require_power_of_two(field.grid());
  return spectrum_from_bins(field.grid(), dft_of_real(field));
}

Spectrum spectrum_of(const AnalyticField& field) {
  require_power_of_two(field.grid());
  const auto f = transform(field.samples());
  const std::size_t n = f.size();
  std::vector<cplx> bins(n);
  for (std::size_t k = 0; k < n; ++k) bins[k] = 0.5 * (f[k] + std::conj(f[(n - k) % n]));
  return spectrum_from_bins(field.grid(), std::move(bins));
}

SampledField field_of(const Spectrum& spectrum) {
  require_power_of_two(spectrum.grid());
  const auto x = inverse(bins_from_spectrum(spectrum));
  std::vector<double> re(x.size());
  std::transform(x.begin(), x.end(), re.begin(), [](cplx v) { return v.real(); });
  return SampledField(spectrum.grid(), std::move(re));
}

AnalyticField analytic_field_of(const Spectrum& spectrum) {
  require_power_of_two(spectrum.grid());
  auto bins = bins_from_spectrum(spectrum);
  fold_to_positive(bins);
  return AnalyticField(spectrum.grid(), inverse(bins));
}

double time_energy(const SampledField& field) {
  double s = 0.0;
  for (double v : field.samples()) s += v * v;
  return s * field.grid().dt();
}

double frequency_energy(const Spectrum& spectrum) {
  double s = 0.0;
  for (const cplx& v : spectrum.amplitude()) s += std::norm(v);
  return 0.5 * constants::pi * s * spectrum.domega();
}

}  // namespace ramanbeat
