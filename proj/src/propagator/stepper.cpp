#include "stepper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ramanbeat/core/errors.hpp"

namespace ramanbeat::detail {

Rk4ip::Rk4ip(const LinearProblem& problem)
    : p_(problem),
      f_(problem.size),
      ui_(problem.size),
      k1_(problem.size),
      k2_(problem.size),
      k3_(problem.size),
      k4_(problem.size),
      tmp_(problem.size) {}

void Rk4ip::step(double z, double h, std::vector<cplx>& u) {
  const std::size_t n = p_.size;
  if (!p_.constant_diagonal || h != cached_h_) {
    p_.diagonal_exp(z + 0.5 * h, 0.5 * h, f_);
    cached_h_ = p_.constant_diagonal ? h : -1.0;
  }
  for (std::size_t i = 0; i < n; ++i) ui_[i] = f_[i] * u[i];
  p_.coupling(z, u, k1_);
  for (std::size_t i = 0; i < n; ++i) {
    k1_[i] *= f_[i];
    tmp_[i] = ui_[i] + 0.5 * h * k1_[i];
  }
  p_.coupling(z + 0.5 * h, tmp_, k2_);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = ui_[i] + 0.5 * h * k2_[i];
  p_.coupling(z + 0.5 * h, tmp_, k3_);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = f_[i] * (ui_[i] + h * k3_[i]);
  p_.coupling(z + h, tmp_, k4_);
  for (std::size_t i = 0; i < n; ++i)
    u[i] = f_[i] * (ui_[i] + (h / 6.0) * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i])) + (h / 6.0) * k4_[i];
}

double guarded_step(double rate_bound, double span, const PropagationConfig& cfg) {
  if (cfg.dz > 0.0) {
    if (cfg.dz * rate_bound >= cfg.stability_limit) {
      std::ostringstream msg;
      msg << "dz = " << cfg.dz << " m violates the stability guard (dz * rate = " << cfg.dz * rate_bound
          << " >= " << cfg.stability_limit << "); use dz < " << cfg.stability_limit / rate_bound << " m";
      throw StepSizeError(msg.str());
    }
    return cfg.dz;
  }
  if (rate_bound <= 0.0) return span;
  return cfg.safety * cfg.stability_limit / rate_bound;
}

std::size_t integrate(const LinearProblem& problem, std::vector<cplx>& u, double z0, double z1,
                      const PropagationConfig& cfg) {
  const double span = z1 - z0;
  if (span <= 0.0) return 0;
  const double hmax = guarded_step(problem.rate_bound, span, cfg);
  if (!cfg.adaptive) {
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(span / hmax - 1e-9)));
    const double h = span / static_cast<double>(steps);
    Rk4ip rk(problem);
    for (std::size_t s = 0; s < steps; ++s) rk.step(z0 + static_cast<double>(s) * h, h, u);
    return steps;
  }

  // step doubling: one step of h against two of h/2, local error / 15
  Rk4ip rk(problem);
  std::vector<cplx> big(u.size()), small(u.size());
  double z = z0, h = std::min(hmax, span);
  std::size_t accepted = 0, tries = 0;
  while (z < z1) {
    if (++tries > 1000000) throw StepSizeError("adaptive z stepping did not converge");
    h = std::min(h, z1 - z);
    big = u;
    rk.step(z, h, big);
    small = u;
    rk.step(z, 0.5 * h, small);
    rk.step(z + 0.5 * h, 0.5 * h, small);
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      err = std::max(err, std::abs(small[i] - big[i]));
      scale = std::max(scale, std::abs(small[i]));
    }
    err = scale > 0.0 ? err / (15.0 * scale) : 0.0;
    if (err <= cfg.rel_tol) {
      for (std::size_t i = 0; i < u.size(); ++i) u[i] = small[i] + (small[i] - big[i]) / 15.0;
      z += h;
      ++accepted;
    }
    const double grow = err > 0.0 ? 0.9 * std::pow(cfg.rel_tol / err, 0.2) : 2.0;
    h = std::min(hmax, h * std::clamp(grow, 0.2, 2.0));
    if (h < 1e-16 * std::max(1.0, std::abs(z1))) throw StepSizeError("adaptive z step underflow");
  }
  return accepted;
}

}  // namespace ramanbeat::detail
