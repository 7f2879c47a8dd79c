#include "ramanbeat/propagator/config.hpp"

#include <cmath>
#include <stdexcept>

namespace ramanbeat {

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::FrequencyDomain: return "freq-domain";
    case Scheme::SidebandSvea: return "sideband-svea";
    case Scheme::SidebandFull: return "sideband-full";
    case Scheme::TimeDomainFull: return "time-domain-full";
    case Scheme::TimeDomainOffResonant: return "time-domain-offres";
    case Scheme::Dispersionless: return "dispersionless";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& name) {
  for (Scheme s : {Scheme::FrequencyDomain, Scheme::SidebandSvea, Scheme::SidebandFull, Scheme::TimeDomainFull,
                   Scheme::TimeDomainOffResonant, Scheme::Dispersionless})
    if (to_string(s) == name) return s;
  throw std::invalid_argument("unknown scheme '" + name +
                              "' (freq-domain, sideband-svea, sideband-full, time-domain-full, "
                              "time-domain-offres, dispersionless)");
}

void validate(const PropagationConfig& cfg) {
  if (!(cfg.z_end >= 0.0) || !std::isfinite(cfg.z_end)) throw std::invalid_argument("z_end must be >= 0");
  if (!std::isfinite(cfg.dz)) throw std::invalid_argument("dz must be finite");
  if (!(cfg.stability_limit > 0.0)) throw std::invalid_argument("stability_limit must be positive");
  if (!(cfg.safety > 0.0 && cfg.safety <= 1.0)) throw std::invalid_argument("safety must lie in (0, 1]");
  if (cfg.adaptive && !(cfg.rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
  if (cfg.comb_q_max < cfg.comb_q_min) throw std::invalid_argument("empty comb range");
}

}  // namespace ramanbeat
