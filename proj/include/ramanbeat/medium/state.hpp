#pragma once

#include <complex>

#include "ramanbeat/medium/parameters.hpp"
#include "ramanbeat/medium/rabi.hpp"

namespace ramanbeat {

/// Density matrix of the Raman pair; rho_ba = conj(rho_ab).
class TwoLevelState {
 public:
  TwoLevelState() = default;
  /// Validates trace (1e-9), population bounds and |rho_ab|^2 <= rho_aa rho_bb + 1e-9.
  TwoLevelState(double rho_aa, double rho_bb, std::complex<double> rho_ab);
  /// Builds without validation (numerical trajectories).
  static TwoLevelState unchecked(double rho_aa, double rho_bb, std::complex<double> rho_ab);
  static TwoLevelState ground() { return TwoLevelState(1.0, 0.0, 0.0); }

  double rho_aa() const { return aa_; }
  double rho_bb() const { return bb_; }
  std::complex<double> rho_ab() const { return ab_; }
  std::complex<double> rho_ba() const { return std::conj(ab_); }

 private:
  double aa_ = 1.0;
  double bb_ = 0.0;
  std::complex<double> ab_{};
};

/// Adiabatic parameterization rho_aa = cos^2 theta, rho_bb = sin^2 theta,
/// rho_ab = e^{i(phi0 - kappa z)} sin theta cos theta.
class PreparedCoherence {
 public:
  PreparedCoherence(double theta, double phi0, double kappa);

  double theta() const { return theta_; }
  double phi0() const { return phi0_; }
  double kappa() const { return kappa_; }
  /// |sin theta cos theta|
  double rho0() const { return rho0_; }
  std::complex<double> coherence_at(double z) const;
  TwoLevelState state_at(double z = 0.0) const;
  PreparedCoherence with_kappa(double kappa) const { return PreparedCoherence(theta_, phi0_, kappa); }

 private:
  double theta_;
  double phi0_;
  double kappa_;
  double rho0_;
};

struct AdiabaticResult {
  PreparedCoherence coherence;
  TwoLevelState state;
};

/// Dressed state followed under slow turn-on of the drives:
/// tan 2theta = |2 Omega_ab / (delta + Omega_aa - Omega_bb)| sgn(delta),
/// sgn(0) = +1, phi0 = arg(Omega_ab). kappa is zero unless a medium is given.
AdiabaticResult adiabatic_state(const RabiStark& ext, double delta);
AdiabaticResult adiabatic_state(const RabiStark& ext, double delta, const MediumParameters& params);

/// kappa = (N hbar/epsilon0 c) omega_m (a0 rho_aa + b0 rho_bb)
double kappa_of(const MediumParameters& params, const TwoLevelState& state);

}  // namespace ramanbeat
