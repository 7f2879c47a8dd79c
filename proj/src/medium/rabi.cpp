#include "ramanbeat/medium/rabi.hpp"

#include <stdexcept>

#include "ramanbeat/core/units.hpp"

namespace ramanbeat {

RabiStark CombCouplings::apply(std::span<const std::complex<double>> env) const {
  if (env.size() != aa.size()) throw std::invalid_argument("envelope count does not match comb couplings");
  RabiStark r;
  for (std::size_t i = 0; i < env.size(); ++i) {
    const double p = std::norm(env[i]);
    r.aa += aa[i] * p;
    r.bb += bb[i] * p;
  }
  for (std::size_t i = 0; i + 1 < env.size(); ++i) {
    r.ab += ab[i] * env[i] * std::conj(env[i + 1]);
    r.ba += ba[i] * env[i + 1] * std::conj(env[i]);
  }
  return r;
}

namespace {

void check_range(int q_min, int q_max) {
  if (q_max < q_min) throw std::invalid_argument("empty sideband range");
}

}  // namespace

CombCouplings comb_couplings(const MediumParameters& params, double omega0, double omega_m, int q_min, int q_max) {
  check_range(q_min, q_max);
  CombCouplings c;
  c.q_min = q_min;
  for (int q = q_min; q <= q_max; ++q) {
    const auto s = params.at(omega0 + q * omega_m);
    c.aa.push_back(0.5 * s.a.value);
    c.bb.push_back(0.5 * s.b.value);
    if (q < q_max) {
      c.ab.emplace_back(0.5 * s.d.value);
      c.ba.emplace_back(0.5 * s.d.value);
    }
  }
  return c;
}

CombCouplings comb_couplings(const LevelTable& levels, double omega0, double omega_m, int q_min, int q_max) {
  check_range(q_min, q_max);
  const double k = 1.0 / (8.0 * constants::hbar);
  CombCouplings c;
  c.q_min = q_min;
  for (int q = q_min; q <= q_max; ++q) {
    const double wq = omega0 + q * omega_m;
    const auto plus = polarizability(levels, wq);
    const auto minus = polarizability(levels, -wq);
    c.aa.push_back(k * (plus.alpha_aa + minus.alpha_aa));
    c.bb.push_back(k * (plus.alpha_bb + minus.alpha_bb));
    if (q < q_max) {
      const auto next_plus = polarizability(levels, wq + omega_m);
      const auto next_minus = polarizability(levels, -(wq + omega_m));
      c.ab.emplace_back(k * (plus.alpha_ab + next_minus.alpha_ab));
      c.ba.emplace_back(k * (next_plus.alpha_ba + minus.alpha_ba));
    }
  }
  return c;
}

namespace {

std::vector<std::complex<double>> envelopes_at(const SidebandSet& set, std::size_t k) {
  std::vector<std::complex<double>> env;
  env.reserve(set.count());
  for (int q = set.q_min(); q <= set.q_max(); ++q) env.push_back(set.at(q, k));
  return env;
}

}  // namespace

RabiStark rabi_and_stark(const SidebandSet& set, const MediumParameters& params, std::size_t k) {
  const auto c = comb_couplings(params, set.omega0().value(), set.omega_m().value(), set.q_min(), set.q_max());
  return c.apply(envelopes_at(set, k));
}

RabiStark rabi_and_stark(const SidebandSet& set, const LevelTable& levels, std::size_t k) {
  const auto c = comb_couplings(levels, set.omega0().value(), set.omega_m().value(), set.q_min(), set.q_max());
  return c.apply(envelopes_at(set, k));
}

}  // namespace ramanbeat
