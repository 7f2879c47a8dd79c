#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "ramanbeat/core/grid.hpp"
#include "ramanbeat/core/units.hpp"
#include "ramanbeat/medium/rabi.hpp"
#include "ramanbeat/medium/state.hpp"

namespace ramanbeat {

/// Slowly varying drive envelope E(tau), V/m.
using Envelope = std::function<std::complex<double>(double)>;

struct DriveField {
  Frequency frequency;
  Envelope envelope;
};

struct StateDynamics {
  double delta = 0.0;   // two-photon detuning, rad/s
  double gamma1 = 0.0;  // population decay, 1/s
  double gamma2 = 0.0;  // coherence decay, 1/s
};

/// Two drives spaced by exactly one modulation period in frequency
/// (upper - lower = omega_m); the Raman detuning enters only through delta.
class DriveConfig {
 public:
  DriveConfig(DriveField upper, DriveField lower, Frequency omega_m, StateDynamics dynamics);

  const DriveField& upper() const { return upper_; }
  const DriveField& lower() const { return lower_; }
  Frequency omega_m() const { return omega_m_; }
  const StateDynamics& dynamics() const { return dynamics_; }

 private:
  DriveField upper_;
  DriveField lower_;
  Frequency omega_m_;
  StateDynamics dynamics_;
};

struct EvolveOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  /// Maximum internal step; zero means the grid step.
  double max_step = 0.0;
  std::size_t max_steps_between_samples = 1000000;
};

using RabiSource = std::function<RabiStark(double)>;

/// Integrates the density-matrix equations over the grid with adaptive
/// embedded 4(5) Runge-Kutta stepping. Returns one state per grid point
/// (the first is the initial state). Throws StiffnessError if the step
/// size control gives up.
std::vector<TwoLevelState> evolve_state(const TwoLevelState& initial, const StateDynamics& dynamics,
                                        const RabiSource& rabi, const TimeGrid& grid,
                                        const EvolveOptions& options = {});

/// Right-hand side of the density-matrix equations, x = (rho_aa, rho_bb,
/// Re rho_ab, Im rho_ab).
void density_matrix_rhs(const RabiStark& om, const StateDynamics& dyn, const double* x, double* dxdt);

}  // namespace ramanbeat
