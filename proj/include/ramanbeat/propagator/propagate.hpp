#pragma once

#include "ramanbeat/core/field.hpp"
#include "ramanbeat/core/sidebands.hpp"
#include "ramanbeat/propagator/coefficients.hpp"
#include "ramanbeat/propagator/coherence.hpp"
#include "ramanbeat/propagator/config.hpp"

namespace ramanbeat {

/// Continuous-frequency propagation of a real field's spectrum. The grid
/// must be commensurate with omega_m (omega_m/domega an integer) and the
/// tables built on positive_omegas(spectrum.grid()).
Spectrum propagate_frequency_domain(const Spectrum& spectrum, const CoherenceProfile& medium,
                                    const CoefficientTables& tables, const PropagationConfig& cfg);

/// Discrete sidebands. full = false: slowly varying envelopes (each
/// envelope sample evolves independently). full = true: group-velocity and
/// dispersion terms in the envelope frequency; needs sampled envelopes.
SidebandSet propagate_sidebands(const SidebandSet& set, const CoherenceProfile& medium,
                                const CoefficientTables& tables, const PropagationConfig& cfg, bool full);

/// Positive-frequency field with spectral tau-derivatives. Uses the general
/// constants for TimeDomainFull, the reduced ones for TimeDomainOffResonant
/// and the dispersionless subset for Dispersionless. Throws
/// GridResolutionError if dt cannot hold 8 points per cycle of the highest
/// expected frequency e^{alpha z} omega0.
AnalyticField propagate_time_domain(const AnalyticField& field, const CoherenceProfile& medium,
                                    const CoefficientTables& tables, const PropagationConfig& cfg);

/// Constants actually used by the time-domain scheme for cfg.
TimeDomainConstants time_domain_constants(const CoefficientTables& tables, const PropagationConfig& cfg);

}  // namespace ramanbeat
