#include "ramanbeat/propagator/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ramanbeat/core/errors.hpp"
#include "ramanbeat/core/fft.hpp"
#include "sideband_svea.hpp"
#include "stepper.hpp"

namespace ramanbeat {

namespace {

constexpr cplx I{0.0, 1.0};

double taylor(const Derivs& f, double x) { return f.value + x * (f.d1 + 0.5 * x * f.d2); }

}  // namespace

// ---------------------------------------------------------------- frequency domain

Spectrum propagate_frequency_domain(const Spectrum& spectrum, const CoherenceProfile& medium,
                                    const CoefficientTables& tables, const PropagationConfig& cfg) {
  validate(cfg);
  const TimeGrid& grid = spectrum.grid();
  const std::size_t n = grid.size();
  const std::size_t half = n / 2;
  const double dw = grid.domega();
  const double ratio = tables.omega_m.value() / dw;
  const double m_round = std::round(ratio);
  if (m_round < 1.0 || std::abs(ratio - m_round) > 1e-9 * ratio) {
    std::ostringstream msg;
    msg << "frequency grid is not commensurate with omega_m: omega_m/domega = " << ratio
        << "; choose n*dt as an integer multiple of the modulation period " << 2 * std::numbers::pi / tables.omega_m.value()
        << " s";
    throw AlignmentError(msg.str());
  }
  const auto M = static_cast<std::size_t>(m_round);
  if (tables.omega.size() != half + 1 || std::abs(tables.omega[half] - static_cast<double>(half) * dw) > 1e-9 * half * dw)
    throw std::invalid_argument("coefficient tables were not built on positive_omegas of this grid");

  std::vector<cplx> u(spectrum.amplitude().begin(), spectrum.amplitude().begin() + static_cast<long>(half + 1));

  double gh = 0.0;
  for (std::size_t k = 0; k <= half; ++k) gh = std::max(gh, std::abs(tables.g_w[k]) + std::abs(tables.h_w[k]));

  detail::LinearProblem p;
  p.size = half + 1;
  p.constant_diagonal = medium.constant_populations();
  p.rate_bound = gh * medium.max_coherence();
  p.diagonal_exp = [&](double z, double h, std::vector<cplx>& f) {
    const auto s = medium.at(z);
    for (std::size_t k = 0; k <= half; ++k) f[k] = std::polar(1.0, (tables.alpha_w[k] * s.aa + tables.beta_w[k] * s.bb) * h);
  };
  p.coupling = [&](double z, const std::vector<cplx>& e, std::vector<cplx>& out) {
    const auto s = medium.at(z);
    const cplx ba = s.ba(), ab = s.ab;
    for (std::size_t k = 0; k <= half; ++k) {
      cplx below = 0.0, above = 0.0;
      if (k >= M)
        below = e[k - M];
      else if (M - k <= half)
        below = std::conj(e[M - k]);  // E_{-w} = E_w*
      if (k + M <= half) above = e[k + M];
      out[k] = I * (tables.g_w[k] * ba * below + tables.h_w[k] * ab * above);
    }
  };
  detail::integrate(p, u, 0.0, cfg.z_end, cfg);

  std::vector<cplx> amp(n);
  for (std::size_t k = 0; k <= half; ++k) amp[k] = u[k];
  for (std::size_t k = 1; k < n - half; ++k) amp[n - k] = std::conj(u[k]);
  return Spectrum(grid, std::move(amp));
}

// ---------------------------------------------------------------- sidebands

namespace detail {

std::size_t advance_svea(std::vector<cplx>& u, std::span<const SidebandCoefficients> coeffs, std::size_t nk,
                         std::span<const MediumSnapshot> medium, double dz, const PropagationConfig& cfg) {
  const std::size_t nq = coeffs.size();
  if (medium.size() != nk || u.size() != nq * nk) throw std::invalid_argument("sideband state size mismatch");
  double rho = 0.0, gh = 0.0;
  for (const auto& m : medium) rho = std::max(rho, std::abs(m.ab));
  for (const auto& c : coeffs) gh = std::max(gh, std::abs(c.g.value) + std::abs(c.h.value));

  LinearProblem p;
  p.size = nq * nk;
  p.rate_bound = gh * rho;
  p.diagonal_exp = [&](double, double h, std::vector<cplx>& f) {
    for (std::size_t q = 0; q < nq; ++q)
      for (std::size_t k = 0; k < nk; ++k)
        f[q * nk + k] = std::polar(1.0, (coeffs[q].alpha.value * medium[k].aa + coeffs[q].beta.value * medium[k].bb) * h);
  };
  p.coupling = [&](double, const std::vector<cplx>& e, std::vector<cplx>& out) {
    for (std::size_t q = 0; q < nq; ++q) {
      const double g = coeffs[q].g.value, h = coeffs[q].h.value;
      for (std::size_t k = 0; k < nk; ++k) {
        cplx acc = 0.0;
        if (q > 0) acc += g * medium[k].ba() * e[(q - 1) * nk + k];
        if (q + 1 < nq) acc += h * medium[k].ab * e[(q + 1) * nk + k];
        out[q * nk + k] = I * acc;
      }
    }
  };
  PropagationConfig c = cfg;
  c.adaptive = false;
  return integrate(p, u, 0.0, dz, c);
}

}  // namespace detail

SidebandSet propagate_sidebands(const SidebandSet& set, const CoherenceProfile& medium,
                                const CoefficientTables& tables, const PropagationConfig& cfg, bool full) {
  validate(cfg);
  if (std::abs(set.omega_m().value() - tables.omega_m.value()) > 1e-12 * tables.omega_m.value())
    throw std::invalid_argument("sideband spacing differs from the medium's omega_m");
  for (int q = set.q_min(); q <= set.q_max(); ++q) {
    if (!tables.has_sideband(q) ||
        std::abs(tables.sideband(q).omega - set.omega_q(q)) > 1e-9 * set.omega_q(q))
      throw std::invalid_argument("coefficient tables do not cover sideband " + std::to_string(q));
  }
  if (full && !set.is_sampled()) throw std::invalid_argument("full sideband propagation needs sampled envelopes");

  const std::size_t nq = set.count();
  const std::size_t nk = set.is_sampled() ? set.grid().size() : 1;
  std::vector<SidebandCoefficients> coeffs;
  for (int q = set.q_min(); q <= set.q_max(); ++q) coeffs.push_back(tables.sideband(q));

  std::vector<cplx> u(nq * nk);
  for (std::size_t q = 0; q < nq; ++q) {
    const auto& env = set.envelope(set.q_min() + static_cast<int>(q));
    std::copy(env.begin(), env.end(), u.begin() + static_cast<long>(q * nk));
  }

  std::vector<double> Omega(nk, 0.0);
  std::optional<Fft> fft;
  if (full) {
    fft.emplace(nk);
    Omega = set.grid().omegas();
    for (std::size_t q = 0; q < nq; ++q) {
      std::span<cplx> row(u.data() + q * nk, nk);
      fft->to_frequency(row, row);
    }
  }

  // coefficient values at each envelope frequency (Omega = 0 for SVEA)
  std::vector<double> al(nq * nk), be(nq * nk), gg(nq * nk), hh(nq * nk);
  double gh = 0.0;
  for (std::size_t q = 0; q < nq; ++q) {
    for (std::size_t k = 0; k < nk; ++k) {
      const std::size_t i = q * nk + k;
      al[i] = taylor(coeffs[q].alpha, Omega[k]);
      be[i] = taylor(coeffs[q].beta, Omega[k]);
      gg[i] = taylor(coeffs[q].g, Omega[k]);
      hh[i] = taylor(coeffs[q].h, Omega[k]);
      gh = std::max(gh, std::abs(gg[i]) + std::abs(hh[i]));
    }
  }

  detail::LinearProblem p;
  p.size = nq * nk;
  p.constant_diagonal = medium.constant_populations();
  p.rate_bound = gh * medium.max_coherence();
  p.diagonal_exp = [&](double z, double h, std::vector<cplx>& f) {
    const auto s = medium.at(z);
    for (std::size_t i = 0; i < p.size; ++i) f[i] = std::polar(1.0, (al[i] * s.aa + be[i] * s.bb) * h);
  };
  p.coupling = [&](double z, const std::vector<cplx>& e, std::vector<cplx>& out) {
    const auto s = medium.at(z);
    const cplx ba = s.ba(), ab = s.ab;
    for (std::size_t q = 0; q < nq; ++q) {
      for (std::size_t k = 0; k < nk; ++k) {
        const std::size_t i = q * nk + k;
        cplx acc = 0.0;
        if (q > 0) acc += gg[i] * ba * e[i - nk];
        if (q + 1 < nq) acc += hh[i] * ab * e[i + nk];
        out[i] = I * acc;
      }
    }
  };
  detail::integrate(p, u, 0.0, cfg.z_end, cfg);

  if (full) {
    for (std::size_t q = 0; q < nq; ++q) {
      std::span<cplx> row(u.data() + q * nk, nk);
      fft->to_time(row, row);
    }
  }
  std::vector<std::vector<cplx>> env(nq);
  for (std::size_t q = 0; q < nq; ++q) env[q].assign(u.begin() + static_cast<long>(q * nk), u.begin() + static_cast<long>((q + 1) * nk));
  if (set.is_sampled()) return SidebandSet(set.omega0(), set.omega_m(), set.q_min(), set.grid(), std::move(env));
  std::vector<cplx> flat(nq);
  for (std::size_t q = 0; q < nq; ++q) flat[q] = env[q][0];
  return SidebandSet(set.omega0(), set.omega_m(), set.q_min(), std::move(flat));
}

// ---------------------------------------------------------------- time domain

TimeDomainConstants time_domain_constants(const CoefficientTables& tables, const PropagationConfig& cfg) {
  TimeDomainConstants c;
  switch (cfg.scheme) {
    case Scheme::TimeDomainFull: c = tables.general; break;
    case Scheme::TimeDomainOffResonant: c = tables.reduced; break;
    case Scheme::Dispersionless:
      c = tables.reduced;
      c.A = c.B = c.A2 = c.B2 = c.K2 = c.Q2 = 0.0;
      break;
    default: throw std::invalid_argument("scheme " + to_string(cfg.scheme) + " is not a time-domain scheme");
  }
  const auto& t = cfg.terms;
  if (!t.phase) c.A = c.B = 0.0;
  if (!t.group_velocity) c.A1 = c.B1 = 0.0;
  if (!t.dispersion) c.A2 = c.B2 = 0.0;
  if (!t.coupling) c.K = c.Q = 0.0;
  if (!t.coupling_group) c.K1 = c.Q1 = 0.0;
  if (!t.coupling_dispersion) c.K2 = c.Q2 = 0.0;
  return c;
}

AnalyticField propagate_time_domain(const AnalyticField& field, const CoherenceProfile& medium,
                                    const CoefficientTables& tables, const PropagationConfig& cfg) {
  validate(cfg);
  require_windowed(field.real_part());
  const TimeGrid& grid = field.grid();
  const std::size_t n = grid.size();
  const auto c = time_domain_constants(tables, cfg);

  const double rho_max = medium.max_coherence();
  const double az = 2.0 * std::abs(tables.reduced.K) * rho_max * cfg.z_end;
  const double needed = 2.0 * std::numbers::pi / (8.0 * std::exp(az) * tables.omega0.value());
  if (grid.dt() > needed * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "time grid too coarse: dt = " << grid.dt() << " s, but 8 points per cycle of e^{alpha z} omega0 "
        << "(alpha z = " << az << ") require dt <= " << needed << " s";
    throw GridResolutionError(msg.str());
  }

  Fft fft(n);
  std::vector<cplx> u(field.samples().begin(), field.samples().end());
  fft.to_frequency(u, u);

  // The source is tapered to zero below omega_m/2: orders pushed through zero
  // frequency leave the model, and a hard cut there rings across the window.
  const double taper_edge = 0.5 * tables.omega_m.value();
  std::vector<char> pos(n);
  std::vector<double> pk(n), pq(n), taper(n, 0.0);
  double bound = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = grid.omega(k);
    pos[k] = w > 0.0 && 2 * k < n;
    if (!pos[k]) {
      u[k] = 0.0;
      continue;
    }
    const double x = std::min(1.0, w / taper_edge);
    taper[k] = x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
    pk[k] = c.K + w * (c.K1 + 0.5 * w * c.K2);
    pq[k] = c.Q + w * (c.Q1 + 0.5 * w * c.Q2);
    bound = std::max(bound, std::abs(pk[k]) + std::abs(pq[k]));
  }
  const double wm = tables.omega_m.value();
  std::vector<cplx> down(n), up(n);
  for (std::size_t j = 0; j < n; ++j) {
    down[j] = std::polar(1.0, -wm * grid.time(j));
    up[j] = std::conj(down[j]);
  }

  std::vector<cplx> tk(n), tq(n);
  detail::LinearProblem p;
  p.size = n;
  p.constant_diagonal = medium.constant_populations();
  p.rate_bound = bound * rho_max;
  p.diagonal_exp = [&](double z, double h, std::vector<cplx>& f) {
    const auto s = medium.at(z);
    const double d0 = c.A * s.aa + c.B * s.bb, d1 = c.A1 * s.aa + c.B1 * s.bb, d2 = c.A2 * s.aa + c.B2 * s.bb;
    for (std::size_t k = 0; k < n; ++k) {
      const double w = grid.omega(k);
      f[k] = pos[k] ? std::polar(1.0, (d0 + w * (d1 + 0.5 * w * d2)) * h) : cplx(1.0);
    }
  };
  p.coupling = [&](double z, const std::vector<cplx>& e, std::vector<cplx>& out) {
    const auto s = medium.at(z);
    const cplx ba = s.ba(), ab = s.ab;
    for (std::size_t k = 0; k < n; ++k) {
      tk[k] = pos[k] ? pk[k] * e[k] : 0.0;
      tq[k] = pos[k] ? pq[k] * e[k] : 0.0;
    }
    fft.to_time(tk, tk);
    fft.to_time(tq, tq);
    for (std::size_t j = 0; j < n; ++j) tk[j] = ba * down[j] * tk[j] + ab * up[j] * tq[j];
    fft.to_frequency(tk, out);
    for (std::size_t k = 0; k < n; ++k) out[k] = pos[k] ? I * taper[k] * out[k] : 0.0;
  };
  detail::integrate(p, u, 0.0, cfg.z_end, cfg);
  fft.to_time(u, u);
  return AnalyticField(grid, std::move(u));
}

}  // namespace ramanbeat
