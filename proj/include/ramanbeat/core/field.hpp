#pragma once

#include <complex>
#include <vector>

#include "ramanbeat/core/fft.hpp"
#include "ramanbeat/core/grid.hpp"

namespace ramanbeat {

/// Real electric field E(tau) in V/m sampled on a TimeGrid.
class SampledField {
 public:
  SampledField(TimeGrid grid, std::vector<double> samples);
  static SampledField zeros(const TimeGrid& grid);

  const TimeGrid& grid() const { return grid_; }
  const std::vector<double>& samples() const { return samples_; }
  double operator[](std::size_t k) const { return samples_[k]; }
  std::size_t size() const { return samples_.size(); }
  double peak() const;

 private:
  TimeGrid grid_;
  std::vector<double> samples_;
};

/// Positive-frequency component: E = (1/2)(field + conj(field)).
class AnalyticField {
 public:
  AnalyticField(TimeGrid grid, std::vector<cplx> samples);

  const TimeGrid& grid() const { return grid_; }
  const std::vector<cplx>& samples() const { return samples_; }
  const cplx& operator[](std::size_t k) const { return samples_[k]; }
  std::size_t size() const { return samples_.size(); }
  double peak() const;
  SampledField real_part() const;
  std::vector<double> intensity() const;  // |field|^2

 private:
  TimeGrid grid_;
  std::vector<cplx> samples_;
};

/// Spectral amplitude E_omega, with E(tau) = (1/2) int E_omega e^{-i omega tau} d omega.
/// Bins are in FFT order on the frequency axis of the source grid.
class Spectrum {
 public:
  Spectrum(TimeGrid grid, std::vector<cplx> amplitude);

  const TimeGrid& grid() const { return grid_; }
  const std::vector<cplx>& amplitude() const { return amplitude_; }
  const cplx& operator[](std::size_t k) const { return amplitude_[k]; }
  std::size_t size() const { return amplitude_.size(); }
  double omega(std::size_t k) const { return grid_.omega(k); }
  double domega() const { return grid_.domega(); }

 private:
  TimeGrid grid_;
  std::vector<cplx> amplitude_;
};

/// Throws WindowingError unless the field at both grid ends is below
/// rel_tol times its peak.
void require_windowed(const SampledField& field, double rel_tol = 1e-6);
bool is_windowed(const SampledField& field, double rel_tol = 1e-6);

AnalyticField analytic_signal(const SampledField& field);
/// Drops non-positive frequency content of an already complex field.
AnalyticField project_positive(const AnalyticField& field);

Spectrum spectrum_of(const SampledField& field);
/// Spectrum of the real part (1/2)(f + f*) of a complex field.
Spectrum spectrum_of(const AnalyticField& field);
/// Inverse of spectrum_of; the imaginary residue of a non-Hermitian spectrum is discarded.
SampledField field_of(const Spectrum& spectrum);
/// Positive-frequency field synthesized from the omega > 0 bins.
AnalyticField analytic_field_of(const Spectrum& spectrum);

/// sum |E|^2 dt
double time_energy(const SampledField& field);
/// (pi/2) sum |E_omega|^2 d omega, equal to time_energy for the same field.
double frequency_energy(const Spectrum& spectrum);

}  // namespace ramanbeat
