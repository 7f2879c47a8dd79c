#include "ramanbeat/core/units.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ramanbeat {

namespace {

constexpr double kTwoPiC = 2.0 * constants::pi * constants::c;

double checked(double omega) {
  if (!std::isfinite(omega)) throw std::domain_error("frequency must be finite");
  return omega;
}

}  // namespace

Frequency Frequency::from_rad_per_s(double omega) { return Frequency(checked(omega)); }

Frequency Frequency::from_hertz(double hz) { return Frequency(checked(2.0 * constants::pi * hz)); }

Frequency Frequency::from_wavelength_nm(double nm) {
  if (!(nm > 0.0)) throw std::domain_error("wavelength must be positive, got " + std::to_string(nm) + " nm");
  return Frequency(checked(kTwoPiC / (nm * 1e-9)));
}

Frequency Frequency::from_wavenumber_cm(double inverse_cm) {
  if (!(inverse_cm > 0.0))
    throw std::domain_error("wavenumber must be positive, got " + std::to_string(inverse_cm) + " cm^-1");
  return Frequency(checked(kTwoPiC * 100.0 * inverse_cm));
}

double Frequency::hertz() const { return omega_ / (2.0 * constants::pi); }

double Frequency::wavelength_nm() const {
  if (!(omega_ > 0.0)) throw std::domain_error("wavelength undefined for non-positive frequency");
  return kTwoPiC / omega_ * 1e9;
}

double Frequency::wavenumber_cm() const { return omega_ / (kTwoPiC * 100.0); }

double Frequency::period() const {
  if (omega_ == 0.0) throw std::domain_error("period undefined at zero frequency");
  return 2.0 * constants::pi / std::abs(omega_);
}

Frequency convert_frequency(double value, FrequencyUnit unit) {
  switch (unit) {
    case FrequencyUnit::Nanometer:
      return Frequency::from_wavelength_nm(value);
    case FrequencyUnit::Wavenumber:
      return Frequency::from_wavenumber_cm(value);
    case FrequencyUnit::RadPerSecond:
      return Frequency::from_rad_per_s(value);
    case FrequencyUnit::Hertz:
      return Frequency::from_hertz(value);
  }
  throw std::invalid_argument("unknown frequency unit");
}

FrequencyUnit parse_frequency_unit(std::string_view name) {
  if (name == "nm") return FrequencyUnit::Nanometer;
  if (name == "cm-1" || name == "cm^-1" || name == "1/cm") return FrequencyUnit::Wavenumber;
  if (name == "rad/s") return FrequencyUnit::RadPerSecond;
  if (name == "Hz" || name == "hz") return FrequencyUnit::Hertz;
  throw std::invalid_argument("unknown frequency unit '" + std::string(name) + "'");
}

}  // namespace ramanbeat
