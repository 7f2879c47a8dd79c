#include "ramanbeat/propagator/coefficients.hpp"

#include <stdexcept>

namespace ramanbeat {

namespace {

// C w f(x), with x = w + shift, and its first two derivatives in w.
Derivs scaled(double C, double w, const Derivs& f) {
  return {C * w * f.value, C * (f.value + w * f.d1), C * (2.0 * f.d1 + w * f.d2)};
}

}  // namespace

Derivs alpha_coefficient(const MediumParameters& params, double omega) {
  return scaled(params.coupling_scale(), omega, params.at(omega).a);
}

Derivs beta_coefficient(const MediumParameters& params, double omega) {
  return scaled(params.coupling_scale(), omega, params.at(omega).b);
}

Derivs g_coefficient(const MediumParameters& params, double omega) {
  return scaled(params.coupling_scale(), omega, params.at(omega - params.omega_m().value()).d);
}

Derivs h_coefficient(const MediumParameters& params, double omega) {
  return scaled(params.coupling_scale(), omega, params.at(omega).d);
}

const SidebandCoefficients& CoefficientTables::sideband(int q) const {
  if (!has_sideband(q)) throw std::out_of_range("no coefficients for sideband " + std::to_string(q));
  return sidebands[static_cast<std::size_t>(q - q_min)];
}

bool CoefficientTables::has_sideband(int q) const {
  return q >= q_min && q < q_min + static_cast<int>(sidebands.size());
}

std::vector<double> positive_omegas(const TimeGrid& grid) {
  std::vector<double> w(grid.size() / 2 + 1);
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = static_cast<double>(k) * grid.domega();
  return w;
}

CoefficientTables assemble_coefficients(const MediumParameters& params, Frequency omega0,
                                        std::span<const double> omega_grid, int q_min, int q_max) {
  if (q_max < q_min) throw std::invalid_argument("empty sideband range");
  const double w0 = omega0.value();
  const double wm = params.omega_m().value();
  const double C = params.coupling_scale();

  CoefficientTables t;
  t.omega0 = omega0;
  t.omega_m = params.omega_m();
  t.coupling_scale = C;
  t.warnings = params.ordering_warnings();

  t.omega.assign(omega_grid.begin(), omega_grid.end());
  const std::size_t n = t.omega.size();
  t.alpha_w.resize(n);
  t.beta_w.resize(n);
  t.g_w.resize(n);
  t.h_w.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = t.omega[k];
    const auto here = params.at(w);
    const auto below = params.at(w - wm);
    t.alpha_w[k] = C * w * here.a.value;
    t.beta_w[k] = C * w * here.b.value;
    t.g_w[k] = C * w * below.d.value;
    t.h_w[k] = C * w * here.d.value;
  }

  t.q_min = q_min;
  for (int q = q_min; q <= q_max; ++q) {
    const double wq = w0 + q * wm;
    if (!(wq > 0.0)) throw std::invalid_argument("sideband " + std::to_string(q) + " has non-positive frequency");
    t.sidebands.push_back({q, wq, alpha_coefficient(params, wq), beta_coefficient(params, wq),
                           g_coefficient(params, wq), h_coefficient(params, wq)});
  }

  // second-order expansions of alpha, beta about w0, of g about w0 + wm and
  // of h about w0 - wm, written out in terms of a, b, d
  const auto s = params.at(w0);
  const auto dm = params.at(w0 - wm).d;
  const double w1 = w0 + wm, wl = w0 - wm;
  auto& G = t.general;
  G.A = 0.5 * C * w0 * w0 * w0 * s.a.d2;
  G.B = 0.5 * C * w0 * w0 * w0 * s.b.d2;
  G.K = C * (wm * s.d.value - w0 * wm * s.d.d1 + 0.5 * w0 * w0 * w1 * s.d.d2);
  G.Q = C * (-wm * dm.value + w0 * wm * dm.d1 + 0.5 * w0 * w0 * wl * dm.d2);
  G.A1 = C * (s.a.value - w0 * s.a.d1 - w0 * w0 * s.a.d2);
  G.B1 = C * (s.b.value - w0 * s.b.d1 - w0 * w0 * s.b.d2);
  G.K1 = C * (s.d.value - wl * s.d.d1 - w0 * w1 * s.d.d2);
  G.Q1 = C * (dm.value - w1 * dm.d1 - w0 * wl * dm.d2);
  G.A2 = C * (2.0 * s.a.d1 + w0 * s.a.d2);
  G.B2 = C * (2.0 * s.b.d1 + w0 * s.b.d2);
  G.K2 = C * (2.0 * s.d.d1 + w1 * s.d.d2);
  G.Q2 = C * (2.0 * dm.d1 + wl * dm.d2);

  auto& R = t.reduced;
  R.A = 0.5 * C * w0 * w0 * w0 * s.a.d2;
  R.B = 0.5 * C * w0 * w0 * w0 * s.b.d2;
  R.K = C * wm * s.d.value;
  R.Q = -R.K;
  R.A1 = C * s.a.value;
  R.B1 = C * s.b.value;
  R.K1 = R.Q1 = C * s.d.value;
  R.A2 = 2.0 * C * s.a.d1;
  R.B2 = 2.0 * C * s.b.d1;
  R.K2 = R.Q2 = 2.0 * C * s.d.d1;
  return t;
}

}  // namespace ramanbeat
