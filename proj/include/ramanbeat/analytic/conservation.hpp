#pragma once

#include "ramanbeat/analytic/beat.hpp"

namespace ramanbeat {

struct ConservedPair {
  double input = 0.0;
  double output = 0.0;
  /// |output - input| / scale, where scale is the natural magnitude of the
  /// quantity (for the signed area: the larger of |area| and the integral of |E_in|).
  double rel_error = 0.0;
};

struct ConservationReport {
  ConservedPair area;              // int E d eta  vs  int E_in ds
  ConservedPair photon_number;     // (c eps0/2hbar) int E^2/omega_osc  vs  int E_in^2/omega0
  ConservedPair length_frequency;  // mean(omega_osc)(eta2-eta1)  vs  omega0 (s2-s1)
  long oscillations_in = 0;        // zero crossings / 2
  long oscillations_out = 0;
};

/// Compares the conserved quantities of an input field (on its s grid) and
/// the dispersionless output (on its eta grid). The length-frequency pair
/// uses the interval where the output exceeds the crossing threshold.
ConservationReport conservation_report(const SampledField& input, const SampledField& output, Frequency omega0,
                                       const BeatParameters& p);

/// Zero crossings of a real signal with hysteresis: a crossing is counted
/// when the signal moves from above +h to below -h or back. threshold[k]
/// gives h at sample k.
long count_zero_crossings(std::span<const double> field, std::span<const double> threshold);

}  // namespace ramanbeat
