#pragma once

#include <optional>
#include <string>

#include "ramanbeat/core/grid.hpp"

namespace ramanbeat {

enum class Scheme {
  FrequencyDomain,
  SidebandSvea,
  SidebandFull,
  TimeDomainFull,         // general coefficients
  TimeDomainOffResonant,  // dominant terms only
  Dispersionless,         // group-velocity and coupling terms of a dispersionless medium
};

std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& name);

/// Term groups of the time-domain equation; disabling one is an ablation.
struct TermGroups {
  bool phase = true;            // A, B
  bool group_velocity = true;   // A1, B1
  bool dispersion = true;       // A2, B2
  bool coupling = true;         // K, Q
  bool coupling_group = true;   // K1, Q1
  bool coupling_dispersion = true;  // K2, Q2
};

struct PropagationConfig {
  double z_end = 0.0;  // m
  /// Fixed step in m; zero or negative picks the largest step allowed by the
  /// stability guard (times safety).
  double dz = 0.0;
  Scheme scheme = Scheme::TimeDomainOffResonant;
  /// dz * (largest coupling rate) must stay below this.
  double stability_limit = 0.1;
  double safety = 0.5;
  /// Step-doubling error control instead of fixed steps.
  bool adaptive = false;
  double rel_tol = 1e-8;
  TermGroups terms;
  /// Local-time grid for the drive cascade.
  std::optional<TimeGrid> grid;
  /// Comb range of the drive cascade (order 0 is the upper drive).
  int comb_q_min = -6;
  int comb_q_max = 20;
  /// Outermost comb line above this fraction of the peak is an overflow.
  double comb_overflow = 1e-3;
};

void validate(const PropagationConfig& cfg);

}  // namespace ramanbeat
