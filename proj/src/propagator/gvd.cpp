#include "ramanbeat/propagator/gvd.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ramanbeat {

GvdResult gvd_analysis(const MediumParameters& params, const TwoLevelState& state, Frequency omega0, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("gvd_analysis needs alpha > 0");
  const double w0 = omega0.value();
  const double wm = params.omega_m().value();
  const auto s = params.at(w0);
  GvdResult r;
  r.k2 = 2.0 * params.coupling_scale() * (s.a.d1 * state.rho_aa() + s.b.d1 * state.rho_bb());
  if (!(r.k2 > 0.0)) {
    const double inf = std::numeric_limits<double>::infinity();
    r.L_opt = inf;
    r.gamma = r.gamma0 = r.D = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  const double rhs = std::numbers::pi / (2.0 * wm * w0 * r.k2);
  auto f = [&](double L) { return L * std::sinh(alpha * L) - rhs; };
  double hi = 1.0 / alpha;
  while (f(hi) < 0.0) hi *= 2.0;
  std::uintmax_t iters = 200;
  const auto [lo_b, hi_b] =
      boost::math::tools::toms748_solve(f, 0.0, hi, -rhs, f(hi), boost::math::tools::eps_tolerance<double>(50), iters);
  r.finite = true;
  r.L_opt = 0.5 * (lo_b + hi_b);
  r.gamma = 1.0 + 2.0 * (w0 / wm) * std::sinh(alpha * r.L_opt);
  r.gamma0 = std::exp(alpha * r.L_opt);
  r.D = r.gamma / r.gamma0;
  return r;
}

}  // namespace ramanbeat
