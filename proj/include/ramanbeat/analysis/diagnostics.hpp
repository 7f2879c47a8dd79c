#pragma once

#include <optional>
#include <vector>

#include "ramanbeat/core/field.hpp"
#include "ramanbeat/core/units.hpp"

namespace ramanbeat {

/// Time-domain diagnostics of a pulse or pulse train. Intensity means
/// |field|^2 of the analytic signal (the envelope squared, no carrier ripple).
struct PulseMetrics {
  double peak_amplitude = 0.0;      // V/m, max |field|
  double peak_intensity = 0.0;      // max |field|^2
  double intensity_fwhm = 0.0;      // s, of the dominant sub-pulse
  double centroid = 0.0;            // s, intensity-weighted mean time
  double energy = 0.0;              // integral of E^2 dtau, V^2 s / m^2 (fluence up to eps0 c)
  double mean_frequency = 0.0;      // rad/s, power-weighted over positive frequencies
  double compression_factor = 1.0;  // reference FWHM / intensity_fwhm (1 without a reference)
  std::size_t subpulses = 0;        // segments above half the peak intensity
  std::optional<double> train_period;  // s, mean spacing of sub-pulse peaks
};

/// Throws WindowingError for fields that do not decay at the grid edges and
/// EmptyFieldError for an all-zero field.
PulseMetrics measure_pulse(const SampledField& field);
PulseMetrics measure_pulse(const AnalyticField& field);
/// compression_factor = FWHM(reference) / FWHM(field).
PulseMetrics measure_pulse(const AnalyticField& field, const AnalyticField& reference);
PulseMetrics measure_pulse(const SampledField& field, const SampledField& reference);

/// Sideband powers of a spectrum binned into windows
/// [omega_q - omega_m/2, omega_q + omega_m/2) over non-negative frequencies.
struct SpectralReport {
  int q_min = 0;                 // lowest window (contains omega = 0)
  std::vector<double> power;     // sum of |E_omega|^2 per window, q_min..
  double threshold = 1e-4;       // relative to the strongest window
  int q_stokes = 0;              // lowest order above threshold
  int q_antistokes = 0;          // highest order above threshold
  double valley_ratio = 0.0;     // median mid-gap/line power between orders above 1% power
  bool continuous = false;       // valley_ratio > 0.5
  double total_power = 0.0;      // sum of |E_omega|^2 over omega >= 0

  int q_max() const { return q_min + static_cast<int>(power.size()) - 1; }
  double at(int q) const;
  /// Power of order q relative to the strongest window.
  double relative(int q) const;
};

SpectralReport measure_spectrum(const Spectrum& spectrum, Frequency omega0, Frequency omega_m,
                                double threshold = 1e-4);

struct RunComparison {
  double l2 = 0.0;          // |a - b| / max(|a|, |b|)
  double peak_ratio = 1.0;  // peak intensity a / b
  double fwhm_ratio = 1.0;  // intensity FWHM a / b
};

/// Throws std::domain_error when the grids differ.
RunComparison compare_runs(const SampledField& a, const SampledField& b);
RunComparison compare_runs(const AnalyticField& a, const AnalyticField& b);

}  // namespace ramanbeat
