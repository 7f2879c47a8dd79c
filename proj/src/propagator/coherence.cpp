#include "ramanbeat/propagator/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ramanbeat {

CoherenceProfile CoherenceProfile::uniform(const TwoLevelState& state, double kappa) {
  if (!std::isfinite(kappa)) throw std::invalid_argument("kappa must be finite");
  CoherenceProfile p;
  p.state_ = state;
  p.kappa_ = kappa;
  return p;
}

CoherenceProfile CoherenceProfile::prepared(const PreparedCoherence& coherence) {
  return uniform(coherence.state_at(0.0), coherence.kappa());
}

CoherenceProfile CoherenceProfile::sampled(std::vector<double> z, std::vector<TwoLevelState> states) {
  if (z.empty() || z.size() != states.size()) throw std::invalid_argument("coherence profile: z and states differ");
  for (std::size_t k = 1; k < z.size(); ++k)
    if (!(z[k] > z[k - 1])) throw std::invalid_argument("coherence profile: z must increase");
  CoherenceProfile p;
  p.z_ = std::move(z);
  p.states_ = std::move(states);
  return p;
}

MediumSnapshot CoherenceProfile::at(double z) const {
  if (z_.empty()) {
    return {state_.rho_aa(), state_.rho_bb(), state_.rho_ab() * std::polar(1.0, -kappa_ * z)};
  }
  if (z <= z_.front()) return {states_.front().rho_aa(), states_.front().rho_bb(), states_.front().rho_ab()};
  if (z >= z_.back()) return {states_.back().rho_aa(), states_.back().rho_bb(), states_.back().rho_ab()};
  const auto it = std::upper_bound(z_.begin(), z_.end(), z);
  const std::size_t k = static_cast<std::size_t>(it - z_.begin()) - 1;
  const double f = (z - z_[k]) / (z_[k + 1] - z_[k]);
  const auto& a = states_[k];
  const auto& b = states_[k + 1];
  return {a.rho_aa() + f * (b.rho_aa() - a.rho_aa()), a.rho_bb() + f * (b.rho_bb() - a.rho_bb()),
          a.rho_ab() + f * (b.rho_ab() - a.rho_ab())};
}

double CoherenceProfile::max_coherence() const {
  if (z_.empty()) return std::abs(state_.rho_ab());
  double m = 0.0;
  for (const auto& s : states_) m = std::max(m, std::abs(s.rho_ab()));
  return m;
}

bool CoherenceProfile::constant_populations() const {
  if (z_.empty()) return true;
  return std::all_of(states_.begin(), states_.end(), [&](const TwoLevelState& s) {
    return s.rho_aa() == states_.front().rho_aa() && s.rho_bb() == states_.front().rho_bb();
  });
}

}  // namespace ramanbeat
