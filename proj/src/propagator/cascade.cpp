#include "ramanbeat/propagator/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ramanbeat/core/errors.hpp"
#include "ramanbeat/medium/rabi.hpp"
#include "ramanbeat/propagator/coefficients.hpp"
#include "sideband_svea.hpp"
#include "stepper.hpp"

namespace ramanbeat {

std::size_t CascadeResult::index_of(double tau) const {
  const double f = std::round((tau - grid.origin()) / grid.dt());
  return static_cast<std::size_t>(std::clamp(f, 0.0, static_cast<double>(grid.size() - 1)));
}

CoherenceProfile CascadeResult::profile_at(double tau) const {
  const std::size_t k = index_of(tau);
  std::vector<TwoLevelState> s;
  s.reserve(state.size());
  for (const auto& row : state) s.push_back(row[k]);
  return CoherenceProfile::sampled(z, std::move(s));
}

namespace {

void check_overflow(const std::vector<cplx>& u, std::size_t nq, std::size_t nk, int q_min, double omega0,
                    double omega_m, double limit) {
  double peak = 0.0;
  for (const auto& v : u) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return;
  auto line_max = [&](std::size_t q) {
    double m = 0.0;
    for (std::size_t k = 0; k < nk; ++k) m = std::max(m, std::abs(u[q * nk + k]));
    return m;
  };
  const int q_max = q_min + static_cast<int>(nq) - 1;
  const double top = line_max(nq - 1);
  if (top > limit * peak) {
    std::ostringstream msg;
    msg << "comb overflow: sideband " << q_max << " reaches " << top / peak << " of the peak; enlarge comb_q_max";
    throw CombOverflowError(msg.str());
  }
  // the low end can only be extended while frequencies stay positive
  const double bottom = line_max(0);
  if (omega0 + (q_min - 1) * omega_m > 0.0 && bottom > limit * peak) {
    std::ostringstream msg;
    msg << "comb overflow: sideband " << q_min << " reaches " << bottom / peak << " of the peak; lower comb_q_min";
    throw CombOverflowError(msg.str());
  }
}

}  // namespace

CascadeResult cascade_selfconsistent(const DriveConfig& drive, const MediumParameters& params,
                                     const PropagationConfig& cfg, const EvolveOptions& evolve) {
  validate(cfg);
  if (!cfg.grid) throw std::invalid_argument("the cascade needs a local-time grid");
  const TimeGrid grid = *cfg.grid;
  const std::size_t nk = grid.size();
  const double w0 = drive.upper().frequency.value();
  const double wm = drive.omega_m().value();
  if (std::abs(wm - params.omega_m().value()) > 1e-9 * wm)
    throw std::invalid_argument("drive spacing differs from the medium's omega_m");
  const int q_min = cfg.comb_q_min, q_max = cfg.comb_q_max;
  if (q_min > -1 || q_max < 0) throw std::invalid_argument("the comb must contain orders -1 and 0");
  const std::size_t nq = static_cast<std::size_t>(q_max - q_min + 1);

  const auto tables = assemble_coefficients(params, drive.upper().frequency, {}, q_min, q_max);
  const auto couplings = params.levels() ? comb_couplings(*params.levels(), w0, wm, q_min, q_max)
                                         : comb_couplings(params, w0, wm, q_min, q_max);

  std::vector<cplx> u(nq * nk, 0.0);
  const std::size_t i0 = static_cast<std::size_t>(-q_min);
  for (std::size_t k = 0; k < nk; ++k) {
    u[i0 * nk + k] = drive.upper().envelope(grid.time(k));
    u[(i0 - 1) * nk + k] = drive.lower().envelope(grid.time(k));
  }

  double gh = 0.0;
  for (const auto& c : tables.sidebands) gh = std::max(gh, std::abs(c.g.value) + std::abs(c.h.value));
  const double h_target = detail::guarded_step(gh * 0.5, cfg.z_end, cfg);
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(cfg.z_end / h_target - 1e-9)));
  const double h = cfg.z_end > 0.0 ? cfg.z_end / static_cast<double>(steps) : 0.0;
  PropagationConfig step_cfg = cfg;
  step_cfg.dz = h;
  step_cfg.adaptive = false;

  CascadeResult r{grid, {}, {}, {}, {}};
  std::vector<cplx> env(nq);
  auto rabi = [&](double t) {
    const double f = std::clamp((t - grid.origin()) / grid.dt(), 0.0, static_cast<double>(nk - 1));
    const auto k = std::min(static_cast<std::size_t>(f), nk - 2);
    const double w = f - static_cast<double>(k);
    for (std::size_t q = 0; q < nq; ++q) env[q] = (1.0 - w) * u[q * nk + k] + w * u[q * nk + k + 1];
    return couplings.apply(env);
  };
  std::vector<MediumSnapshot> snaps(nk);
  const std::size_t total = cfg.z_end > 0.0 ? steps : 0;
  for (std::size_t s = 0;; ++s) {
    const double z = static_cast<double>(s) * h;
    auto states = evolve_state(TwoLevelState::ground(), drive.dynamics(), rabi, grid, evolve);

    std::vector<std::vector<cplx>> lines(nq);
    double flux = 0.0;
    for (std::size_t q = 0; q < nq; ++q) {
      lines[q].assign(u.begin() + static_cast<long>(q * nk), u.begin() + static_cast<long>((q + 1) * nk));
      const double wq = w0 + (q_min + static_cast<int>(q)) * wm;
      for (const auto& v : lines[q]) flux += std::norm(v) / wq;
    }
    r.z.push_back(z);
    r.comb.emplace_back(drive.upper().frequency, drive.omega_m(), q_min, grid, std::move(lines));
    r.photon_flux.push_back(flux);
    for (std::size_t k = 0; k < nk; ++k) snaps[k] = {states[k].rho_aa(), states[k].rho_bb(), states[k].rho_ab()};
    r.state.push_back(std::move(states));
    if (s == total) break;

    detail::advance_svea(u, tables.sidebands, nk, snaps, h, step_cfg);
    check_overflow(u, nq, nk, q_min, w0, wm, cfg.comb_overflow);
  }
  return r;
}

}  // namespace ramanbeat
