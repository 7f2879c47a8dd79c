#pragma once

#include <numbers>
#include <string_view>

namespace ramanbeat {

namespace constants {
inline constexpr double c = 299792458.0;              // m/s (exact)
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double epsilon0 = 8.8541878128e-12;  // F/m
inline constexpr double pi = std::numbers::pi;
}  // namespace constants

enum class FrequencyUnit { Nanometer, Wavenumber, RadPerSecond, Hertz };

/// Angular frequency in rad/s. Vacuum wavelength and wavenumber conversions
/// use the exact SI speed of light.
class Frequency {
 public:
  constexpr Frequency() = default;

  static Frequency from_rad_per_s(double omega);
  static Frequency from_hertz(double hz);
  static Frequency from_wavelength_nm(double nm);
  static Frequency from_wavenumber_cm(double inverse_cm);

  constexpr double value() const { return omega_; }
  double hertz() const;
  double wavelength_nm() const;
  double wavenumber_cm() const;
  /// Period 2*pi/omega, s.
  double period() const;

  friend constexpr bool operator==(Frequency, Frequency) = default;

 private:
  explicit constexpr Frequency(double omega) : omega_(omega) {}
  double omega_ = 0.0;
};

Frequency convert_frequency(double value, FrequencyUnit unit);
FrequencyUnit parse_frequency_unit(std::string_view name);

}  // namespace ramanbeat
