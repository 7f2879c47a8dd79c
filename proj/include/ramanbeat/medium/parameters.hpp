#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ramanbeat/core/units.hpp"
#include "ramanbeat/medium/levels.hpp"

namespace ramanbeat {

/// Dispersion coefficients a, b and coupling coefficient d with their
/// derivatives at one frequency.
struct DispersionSample {
  Derivs a;
  Derivs b;
  Derivs d;
};

/// Molecular medium. Either the coefficients and their first two frequency
/// derivatives are given at a reference frequency (a quadratic Taylor model
/// is used elsewhere), or a level table supplies them at any frequency.
class MediumParameters {
 public:
  MediumParameters(double density, Frequency omega_m, Frequency reference, std::array<double, 3> a,
                   std::array<double, 3> b, std::array<double, 3> d);
  MediumParameters(double density, Frequency omega_m, Frequency reference, LevelTable levels);

  /// Solid parahydrogen: N = 2.6e22 cm^-3, omega_m = 4149.7 cm^-1,
  /// coefficients quoted at 800 nm.
  static MediumParameters solid_h2();

  double density() const { return density_; }
  Frequency omega_m() const { return omega_m_; }
  Frequency reference() const { return reference_; }
  const std::array<double, 3>& a() const { return a_; }
  const std::array<double, 3>& b() const { return b_; }
  const std::array<double, 3>& d() const { return d_; }
  const std::optional<LevelTable>& levels() const { return levels_; }

  /// N hbar / (epsilon0 c), the common prefactor of all propagation
  /// coefficients.
  double coupling_scale() const;

  /// Coefficients at angular frequency omega. Without a level table, a and b
  /// are continued evenly to negative frequencies and d symmetrically about
  /// -omega_m/2.
  DispersionSample at(double omega) const;

  /// Copy with a different density (coefficients unchanged).
  MediumParameters with_density(double density) const;
  /// Copy with the derivative terms zeroed (dispersionless medium).
  MediumParameters dispersionless() const;
  /// Copy re-expanded about a new reference frequency with the same
  /// coefficient values (models quoting one coefficient set at any carrier).
  MediumParameters with_reference(Frequency reference) const;

  /// Empty when a0 > w0|a1| > w0^2|a2| (and likewise for b, d) holds at the
  /// reference; otherwise one message per violated chain.
  std::vector<std::string> ordering_warnings() const;

 private:
  void validate() const;

  double density_;
  Frequency omega_m_;
  Frequency reference_;
  std::array<double, 3> a_{};
  std::array<double, 3> b_{};
  std::array<double, 3> d_{};
  std::optional<LevelTable> levels_;
};

}  // namespace ramanbeat
