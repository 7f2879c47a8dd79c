#pragma once

#include "ramanbeat/core/field.hpp"
#include "ramanbeat/core/units.hpp"
#include "ramanbeat/medium/parameters.hpp"
#include "ramanbeat/medium/state.hpp"

namespace ramanbeat {

/// Parameters of the dispersionless beat solution.
///
/// The reduced local time is eta = tau - kappa z/omega_m + phi/omega_m; the
/// coherence wave moves at v = omega_m/kappa.
struct BeatParameters {
  double alpha = 0.0;    // coupling parameter, 1/m
  double omega_m = 0.0;  // rad/s
  double z = 0.0;        // m
  double kappa = 0.0;    // 1/m
  double phi = 0.0;      // phi0 + (pi/2) sgn(delta), rad

  /// alpha*z given directly (z = 1 m, alpha = alpha_z).
  static BeatParameters from_alpha_z(double alpha_z, Frequency omega_m);
  /// From a medium and its prepared coherence at length z.
  static BeatParameters from_medium(const MediumParameters& medium, const PreparedCoherence& coherence, double z);

  double alpha_z() const { return alpha * z; }
  double period() const;
  /// omega_m/kappa (infinite for kappa = 0).
  double velocity() const;
  double eta_of_tau(double tau) const;
  double tau_of_eta(double eta) const;
  void validate() const;
};

/// G(eta) = 1/(e^{az} cos^2(w eta/2) + e^{-az} sin^2(w eta/2))
double gain_profile(double eta, const BeatParameters& p);

/// Input time s(eta) with tan(w s/2) = e^{-az} tan(w eta/2), continued so that
/// s and eta share the same half-period; s(eta + T_m) = s(eta) + T_m.
double time_remap(double eta, const BeatParameters& p);

/// omega_osc(eta) = G(eta) omega0
Frequency instantaneous_frequency(double eta, Frequency omega0, const BeatParameters& p);

/// chi(eta) = (2c/omega_m)(kappa + alpha sin(omega_m eta))
double susceptibility_profile(double eta, const BeatParameters& p, double kappa);

/// alpha = (2 hbar/epsilon0 c) N omega_m d0 rho0
double coupling_alpha(const MediumParameters& params, double rho0);

struct SidebandOrders {
  double q_as = 0.0;
  double q_s = 0.0;
  double gamma = 0.0;  // (omega0/omega_m) alpha, 1/m
};
SidebandOrders sideband_orders(const BeatParameters& p, Frequency omega0);

/// E(z, eta) = E_in(s(eta)) G(eta). The input grid is read as input time s
/// and the output grid (default: the input grid) as eta. E_in is
/// interpolated with a shape-preserving cubic. Throws CoverageError if s(eta)
/// leaves the input grid by more than one step.
SampledField propagate_dispersionless(const SampledField& input, const BeatParameters& p);
SampledField propagate_dispersionless(const SampledField& input, const BeatParameters& p, const TimeGrid& output);

/// Same solution expressed in local time tau on both sides:
/// E(z, tau) = E_in(s(eta(tau)) - phi/omega_m) G(eta(tau)). The input must be
/// windowed and is taken as zero outside its grid.
SampledField propagate_dispersionless_lab(const SampledField& input, const BeatParameters& p);
SampledField propagate_dispersionless_lab(const SampledField& input, const BeatParameters& p, const TimeGrid& output);

}  // namespace ramanbeat
