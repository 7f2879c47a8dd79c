#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ramanbeat/core/sidebands.hpp"
#include "ramanbeat/medium/parameters.hpp"

namespace ramanbeat {

/// Stark shifts and two-photon Rabi frequencies, rad/s.
struct RabiStark {
  double aa = 0.0;
  double bb = 0.0;
  std::complex<double> ab{};
  std::complex<double> ba{};
};

/// Per-sideband prefactors of the stationary reduction for a discrete comb:
/// Omega_aa = sum_q aa[q] |E_q|^2, Omega_bb = sum_q bb[q] |E_q|^2,
/// Omega_ab = sum_q ab[q] E_q E*_{q+1}, Omega_ba = sum_q ba[q] E_{q+1} E*_q.
/// From coefficients, aa = a_q/2, bb = b_q/2, ab = ba = d_q/2; from a level
/// table the polarizability entries at +-omega are used directly.
struct CombCouplings {
  int q_min = 0;
  std::vector<double> aa;
  std::vector<double> bb;
  std::vector<std::complex<double>> ab;  // size count-1
  std::vector<std::complex<double>> ba;

  RabiStark apply(std::span<const std::complex<double>> env) const;
};

CombCouplings comb_couplings(const MediumParameters& params, double omega0, double omega_m, int q_min, int q_max);
CombCouplings comb_couplings(const LevelTable& levels, double omega0, double omega_m, int q_min, int q_max);

/// Evaluated at envelope sample k (ignored for constant envelopes).
RabiStark rabi_and_stark(const SidebandSet& set, const MediumParameters& params, std::size_t k = 0);
RabiStark rabi_and_stark(const SidebandSet& set, const LevelTable& levels, std::size_t k = 0);

}  // namespace ramanbeat
