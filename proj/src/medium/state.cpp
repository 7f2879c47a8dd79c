#include "ramanbeat/medium/state.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ramanbeat/core/errors.hpp"
#include "ramanbeat/core/units.hpp"

namespace ramanbeat {

TwoLevelState::TwoLevelState(double rho_aa, double rho_bb, std::complex<double> rho_ab)
    : aa_(rho_aa), bb_(rho_bb), ab_(rho_ab) {
  constexpr double tol = 1e-9;
  std::ostringstream os;
  if (!std::isfinite(rho_aa) || !std::isfinite(rho_bb) || !std::isfinite(rho_ab.real()) ||
      !std::isfinite(rho_ab.imag()))
    os << "density matrix entries must be finite";
  else if (std::abs(rho_aa + rho_bb - 1.0) > tol)
    os << "trace rho_aa + rho_bb = " << rho_aa + rho_bb << " differs from 1";
  else if (rho_aa < -tol || rho_aa > 1.0 + tol || rho_bb < -tol || rho_bb > 1.0 + tol)
    os << "populations out of [0, 1]: rho_aa = " << rho_aa << ", rho_bb = " << rho_bb;
  else if (std::norm(rho_ab) > rho_aa * rho_bb + tol)
    os << "|rho_ab|^2 = " << std::norm(rho_ab) << " exceeds rho_aa rho_bb = " << rho_aa * rho_bb;
  if (!os.str().empty()) throw std::invalid_argument(os.str());
}

TwoLevelState TwoLevelState::unchecked(double rho_aa, double rho_bb, std::complex<double> rho_ab) {
  TwoLevelState s;
  s.aa_ = rho_aa;
  s.bb_ = rho_bb;
  s.ab_ = rho_ab;
  return s;
}

PreparedCoherence::PreparedCoherence(double theta, double phi0, double kappa)
    : theta_(theta), phi0_(phi0), kappa_(kappa), rho0_(std::abs(std::sin(theta) * std::cos(theta))) {
  if (!std::isfinite(theta) || std::abs(theta) > constants::pi / 2 + 1e-15)
    throw std::invalid_argument("mixing angle must satisfy |theta| <= pi/2");
  if (!std::isfinite(phi0) || !std::isfinite(kappa)) throw std::invalid_argument("phase parameters must be finite");
}

std::complex<double> PreparedCoherence::coherence_at(double z) const {
  return std::polar(std::sin(theta_) * std::cos(theta_), phi0_ - kappa_ * z);
}

TwoLevelState PreparedCoherence::state_at(double z) const {
  const double c = std::cos(theta_), s = std::sin(theta_);
  return TwoLevelState::unchecked(c * c, s * s, coherence_at(z));
}

AdiabaticResult adiabatic_state(const RabiStark& ext, double delta) {
  const double num = 2.0 * std::abs(ext.ab);
  const double den = std::abs(delta + ext.aa - ext.bb);
  if (num == 0.0 && den == 0.0)
    throw DegenerateStateError("adiabatic state undefined: Omega_ab = 0 and delta + Omega_aa - Omega_bb = 0");
  const double sign = delta < 0.0 ? -1.0 : 1.0;
  const double theta = 0.5 * std::atan2(sign * num, den);
  const double phi0 = num == 0.0 ? 0.0 : std::arg(ext.ab);
  PreparedCoherence pc(theta, phi0, 0.0);
  return {pc, pc.state_at(0.0)};
}

AdiabaticResult adiabatic_state(const RabiStark& ext, double delta, const MediumParameters& params) {
  auto r = adiabatic_state(ext, delta);
  const auto pc = r.coherence.with_kappa(kappa_of(params, r.state));
  return {pc, pc.state_at(0.0)};
}

double kappa_of(const MediumParameters& params, const TwoLevelState& state) {
  return params.coupling_scale() * params.omega_m().value() *
         (params.a()[0] * state.rho_aa() + params.b()[0] * state.rho_bb());
}

}  // namespace ramanbeat
