#include "ramanbeat/medium/dynamics.hpp"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ramanbeat/core/errors.hpp"

namespace ramanbeat {

DriveConfig::DriveConfig(DriveField upper, DriveField lower, Frequency omega_m, StateDynamics dynamics)
    : upper_(std::move(upper)), lower_(std::move(lower)), omega_m_(omega_m), dynamics_(dynamics) {
  if (!upper_.envelope || !lower_.envelope) throw std::invalid_argument("drive envelopes must be set");
  const double diff = upper_.frequency.value() - lower_.frequency.value();
  if (std::abs(diff - omega_m.value()) > 1e-9 * omega_m.value()) {
    std::ostringstream os;
    os << "drive spacing " << diff << " rad/s differs from omega_m = " << omega_m.value() << " rad/s";
    throw std::invalid_argument(os.str());
  }
  if (!(dynamics.gamma1 >= 0.0) || !(dynamics.gamma2 >= 0.0))
    throw std::invalid_argument("decay rates must be non-negative");
  if (!std::isfinite(dynamics.delta)) throw std::invalid_argument("detuning must be finite");
}

void density_matrix_rhs(const RabiStark& om, const StateDynamics& dyn, const double* x, double* dxdt) {
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  const double raa = x[0], rbb = x[1];
  const C rab(x[2], x[3]);
  const C rba = std::conj(rab);
  const double exchange = (i * (om.ab * rba - om.ba * rab)).real();
  dxdt[0] = exchange + dyn.gamma1 * rbb;
  dxdt[1] = -exchange - dyn.gamma1 * rbb;
  const C drab = i * (om.aa - om.bb + dyn.delta + i * dyn.gamma2) * rab + i * om.ab * (rbb - raa);
  dxdt[2] = drab.real();
  dxdt[3] = drab.imag();
}

std::vector<TwoLevelState> evolve_state(const TwoLevelState& initial, const StateDynamics& dynamics,
                                        const RabiSource& rabi, const TimeGrid& grid, const EvolveOptions& options) {
  namespace odeint = boost::numeric::odeint;
  using state_type = std::array<double, 4>;

  auto rhs = [&](const state_type& x, state_type& dxdt, double t) {
    density_matrix_rhs(rabi(t), dynamics, x.data(), dxdt.data());
  };

  state_type x{initial.rho_aa(), initial.rho_bb(), initial.rho_ab().real(), initial.rho_ab().imag()};
  std::vector<TwoLevelState> out;
  out.reserve(grid.size());
  auto observer = [&](const state_type& s, double) {
    out.push_back(TwoLevelState::unchecked(s[0], s[1], {s[2], s[3]}));
  };

  const double max_dt = options.max_step > 0.0 ? options.max_step : grid.dt();
  auto stepper = odeint::make_dense_output(options.abs_tol, options.rel_tol, max_dt,
                                           odeint::runge_kutta_dopri5<state_type>());
  const auto times = grid.times();
  try {
    odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), grid.dt(), observer,
                            odeint::max_step_checker(static_cast<int>(options.max_steps_between_samples)));
  } catch (const std::runtime_error& e) {
    throw StiffnessError(std::string("density-matrix integration failed: ") + e.what());
  }
  return out;
}

}  // namespace ramanbeat
