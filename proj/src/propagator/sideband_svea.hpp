#pragma once

#include <span>
#include <vector>

#include "ramanbeat/propagator/coefficients.hpp"
#include "ramanbeat/propagator/coherence.hpp"
#include "stepper.hpp"

namespace ramanbeat::detail {

/// Slowly varying envelope step for a comb stored as u[q * nk + k] with a
/// separate (z-independent) medium state for each envelope sample k.
/// Returns the number of sub-steps taken.
std::size_t advance_svea(std::vector<cplx>& u, std::span<const SidebandCoefficients> coeffs, std::size_t nk,
                         std::span<const MediumSnapshot> medium, double dz, const PropagationConfig& cfg);

}  // namespace ramanbeat::detail
