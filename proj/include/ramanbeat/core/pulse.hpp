#pragma once

#include <span>

#include "ramanbeat/core/field.hpp"
#include "ramanbeat/core/units.hpp"

namespace ramanbeat {

/// How a Gaussian "pulse length" is read. The default is the FWHM of the
/// intensity profile.
enum class WidthConvention { IntensityFwhm, FieldFwhm, FieldHalfWidth1e };

/// Standard deviation sigma of the field envelope exp(-t^2 / (2 sigma^2)).
double gaussian_sigma(double width, WidthConvention convention);

struct GaussianPulse {
  double amplitude = 1.0;  // V/m
  Frequency carrier;
  double width = 0.0;      // s
  double peak_time = 0.0;  // s
  WidthConvention convention = WidthConvention::IntensityFwhm;
  double carrier_phase = 0.0;  // rad, relative to the envelope peak
};

/// E(t) = A exp(-(t-tp)^2/(2 sigma^2)) cos(omega0 (t-tp) + phase)
SampledField make_pulse(const TimeGrid& grid, const GaussianPulse& pulse);

/// Full width at half maximum of the highest peak of a non-negative profile,
/// linearly interpolating the half-level crossings. Returns 0 for an all-zero
/// profile.
double fwhm(const TimeGrid& grid, std::span<const double> profile);

/// FWHM of |field|^2 and of |field|, the two pulse-length measures in use.
double intensity_fwhm(const AnalyticField& field);
double field_fwhm(const AnalyticField& field);

}  // namespace ramanbeat
