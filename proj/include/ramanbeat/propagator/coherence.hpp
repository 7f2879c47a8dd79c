#pragma once

#include <complex>
#include <vector>

#include "ramanbeat/medium/state.hpp"

namespace ramanbeat {

struct MediumSnapshot {
  double aa = 1.0;
  double bb = 0.0;
  std::complex<double> ab{};
  std::complex<double> ba() const { return std::conj(ab); }
};

/// Medium state seen by a probe as a function of z (frozen in tau).
class CoherenceProfile {
 public:
  /// Populations fixed, rho_ab(z) = rho_ab(0) exp(-i kappa z) applied exactly.
  static CoherenceProfile uniform(const TwoLevelState& state, double kappa);
  static CoherenceProfile prepared(const PreparedCoherence& coherence);
  /// Piecewise-linear in z between samples (z strictly increasing); constant
  /// beyond the ends.
  static CoherenceProfile sampled(std::vector<double> z, std::vector<TwoLevelState> states);

  MediumSnapshot at(double z) const;
  /// Largest |rho_ab| over z.
  double max_coherence() const;
  bool is_uniform() const { return z_.empty(); }
  /// Populations are independent of z.
  bool constant_populations() const;

 private:
  CoherenceProfile() = default;
  TwoLevelState state_;
  double kappa_ = 0.0;
  std::vector<double> z_;
  std::vector<TwoLevelState> states_;
};

}  // namespace ramanbeat
