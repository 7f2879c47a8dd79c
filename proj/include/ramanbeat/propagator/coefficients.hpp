#pragma once

#include <span>
#include <string>
#include <vector>

#include "ramanbeat/core/grid.hpp"
#include "ramanbeat/core/units.hpp"
#include "ramanbeat/medium/parameters.hpp"

namespace ramanbeat {

/// Coefficients of the time-domain envelope equation for the
/// positive-frequency field: phase/gain (A, B, K, Q), group velocity
/// (A1, B1, K1, Q1) and group-velocity dispersion (A2, B2, K2, Q2).
struct TimeDomainConstants {
  double A = 0, B = 0, K = 0, Q = 0;
  double A1 = 0, B1 = 0, K1 = 0, Q1 = 0;
  double A2 = 0, B2 = 0, K2 = 0, Q2 = 0;
};

/// alpha, beta, g, h and their first two frequency derivatives at omega_q.
struct SidebandCoefficients {
  int q = 0;
  double omega = 0.0;
  Derivs alpha, beta, g, h;
};

struct CoefficientTables {
  Frequency omega0;
  Frequency omega_m;
  double coupling_scale = 0.0;  // N hbar / (epsilon0 c)

  // continuous-frequency tables on the supplied grid, 1/m
  std::vector<double> omega;
  std::vector<double> alpha_w, beta_w, g_w, h_w;

  int q_min = 0;
  std::vector<SidebandCoefficients> sidebands;

  TimeDomainConstants general;  // full second-order expansion
  TimeDomainConstants reduced;  // dominant terms only (far off resonance)

  std::vector<std::string> warnings;

  const SidebandCoefficients& sideband(int q) const;
  bool has_sideband(int q) const;
};

/// alpha_w = C w a(w), beta_w = C w b(w), g_w = C w d(w - wm), h_w = C w d(w)
/// with C = N hbar/(epsilon0 c), each with first and second derivatives.
Derivs alpha_coefficient(const MediumParameters& params, double omega);
Derivs beta_coefficient(const MediumParameters& params, double omega);
Derivs g_coefficient(const MediumParameters& params, double omega);
Derivs h_coefficient(const MediumParameters& params, double omega);

/// Tables for a probe (or comb) centred at omega0: continuous tables on
/// omega_grid (may be empty), per-sideband values for q_min..q_max and the
/// time-domain constants. Ordering violations of the medium are copied to
/// warnings.
CoefficientTables assemble_coefficients(const MediumParameters& params, Frequency omega0,
                                        std::span<const double> omega_grid, int q_min, int q_max);

/// Non-negative bin frequencies k*domega, k = 0..n/2, of a grid.
std::vector<double> positive_omegas(const TimeGrid& grid);

}  // namespace ramanbeat
