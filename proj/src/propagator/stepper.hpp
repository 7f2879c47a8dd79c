#pragma once

// Fourth-order Runge-Kutta in the interaction picture for du/dz = i D(z) u + N(z) u
// with diagonal D. The diagonal part is exponentiated exactly over each step.

#include <complex>
#include <functional>
#include <vector>

#include "ramanbeat/propagator/config.hpp"

namespace ramanbeat::detail {

using cplx = std::complex<double>;

struct LinearProblem {
  std::size_t size = 0;
  /// factors[i] = exp(i D_i(z) h) for the given z and h
  std::function<void(double z, double h, std::vector<cplx>& factors)> diagonal_exp;
  /// out = N(z) u
  std::function<void(double z, const std::vector<cplx>& u, std::vector<cplx>& out)> coupling;
  /// upper bound of |N| over z, 1/m (stability guard)
  double rate_bound = 0.0;
  /// D does not depend on z
  bool constant_diagonal = true;
};

class Rk4ip {
 public:
  explicit Rk4ip(const LinearProblem& problem);
  void step(double z, double h, std::vector<cplx>& u);

 private:
  const LinearProblem& p_;
  std::vector<cplx> f_, ui_, k1_, k2_, k3_, k4_, tmp_;
  double cached_h_ = -1.0;
};

/// Advances u from z0 to z1 (fixed or adaptive per cfg). Throws
/// StepSizeError when an explicit dz violates the stability guard.
/// Returns the number of accepted steps.
std::size_t integrate(const LinearProblem& problem, std::vector<cplx>& u, double z0, double z1,
                      const PropagationConfig& cfg);

/// Step size the guard allows for a rate bound (cfg.dz if set, after checking).
double guarded_step(double rate_bound, double span, const PropagationConfig& cfg);

}  // namespace ramanbeat::detail
