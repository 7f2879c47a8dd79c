#pragma once

#include "ramanbeat/core/units.hpp"
#include "ramanbeat/medium/parameters.hpp"
#include "ramanbeat/medium/state.hpp"

namespace ramanbeat {

struct GvdResult {
  double k2 = 0.0;        // s^2/m
  bool finite = false;    // false when k2 <= 0 (no optimum)
  double L_opt = 0.0;     // m
  double gamma = 0.0;     // 1 + 2 (w0/wm) sinh(alpha L)
  double gamma0 = 0.0;    // e^{alpha L}
  double D = 0.0;         // gamma / gamma0
};

/// k2 = 2C(a'rho_aa + b'rho_bb); L_opt solves L sinh(alpha L) = pi/(2 wm w0 k2).
GvdResult gvd_analysis(const MediumParameters& params, const TwoLevelState& state, Frequency omega0, double alpha);

}  // namespace ramanbeat
