#pragma once

#include <vector>

#include "ramanbeat/core/sidebands.hpp"
#include "ramanbeat/medium/dynamics.hpp"
#include "ramanbeat/propagator/coherence.hpp"
#include "ramanbeat/propagator/config.hpp"

namespace ramanbeat {

struct CascadeResult {
  TimeGrid grid;
  std::vector<double> z;                          // z samples, z[0] = 0
  std::vector<std::vector<TwoLevelState>> state;  // [z][tau]
  std::vector<SidebandSet> comb;                  // drive comb at each z sample
  /// sum over tau of sum_q |E_q|^2/omega_q at each z sample
  std::vector<double> photon_flux;

  /// Medium seen at local time tau (nearest sample) as a function of z.
  CoherenceProfile profile_at(double tau) const;
  std::size_t index_of(double tau) const;
};

/// Self-consistent drive propagation: at each z the density matrix is
/// evolved over the local-time grid cfg.grid with the current comb, then the
/// comb is advanced over dz with the slowly varying envelope equations. The
/// upper drive is comb order 0, the lower one order -1. Throws
/// CombOverflowError if an outermost line that could be extended exceeds
/// cfg.comb_overflow of the peak.
CascadeResult cascade_selfconsistent(const DriveConfig& drive, const MediumParameters& params,
                                     const PropagationConfig& cfg, const EvolveOptions& evolve = {});

}  // namespace ramanbeat
