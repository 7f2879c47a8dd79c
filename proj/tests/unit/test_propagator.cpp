#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ramanbeat/analytic/beat.hpp"
#include "ramanbeat/analytic/spectrum.hpp"
#include "ramanbeat/core/errors.hpp"
#include "ramanbeat/core/fft.hpp"
#include "ramanbeat/core/pulse.hpp"
#include "ramanbeat/core/sidebands.hpp"
#include "ramanbeat/propagator/cascade.hpp"
#include "ramanbeat/propagator/gvd.hpp"
#include "ramanbeat/propagator/propagate.hpp"
#include "support/oracles.hpp"

using namespace ramanbeat;
using std::numbers::pi;

namespace {

double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

double rel_l2(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

// f(w) = C w x(w) for a Taylor model x; the general constants are the
// second-order expansion of f about w0 evaluated with finite differences.
struct Expansion {
  double c0, c1, c2;
};
Expansion expand(const std::function<double(double)>& f, double about, double w0) {
  // five-point stencils are exact for the cubic f
  const double h = 5e-2 * about;
  const double f0 = f(about), fp = f(about + h), fm = f(about - h), fpp = f(about + 2 * h), fmm = f(about - 2 * h);
  const double d1 = (8 * (fp - fm) - (fpp - fmm)) / (12 * h);
  const double d2 = (16 * (fp + fm) - (fpp + fmm) - 30 * f0) / (12 * h * h);
  return {f0 - w0 * d1 + 0.5 * w0 * w0 * d2, d1 - w0 * d2, d2};
}

struct Fig2Setup {
  MediumParameters medium = MediumParameters::solid_h2().dispersionless();
  PreparedCoherence coherence{-0.4, 0.0, 0.0};
  double wm = 0, tm = 0, z = 0;
  Frequency w0;
  TimeGrid grid = TimeGrid::centered(4096, 1.0);
  SampledField input = SampledField::zeros(TimeGrid::centered(2, 1.0));

  explicit Fig2Setup(std::size_t n = 8192) {
    coherence = coherence.with_kappa(kappa_of(medium, coherence.state_at(0)));
    wm = medium.omega_m().value();
    tm = 2 * pi / wm;
    z = 0.6 / coupling_alpha(medium, coherence.rho0());
    w0 = Frequency::from_rad_per_s(5.2 * wm);
    grid = TimeGrid::centered(n, 64 * tm / n);
    input = make_pulse(grid, {1.0, w0, 10 * tm, 0.0});
  }
  CoherenceProfile profile() const { return CoherenceProfile::prepared(coherence); }
  SampledField analytic() const {
    return propagate_dispersionless_lab(input, BeatParameters::from_medium(medium, coherence, z));
  }
};

MediumParameters quadratic_medium() {
  const auto h2 = MediumParameters::solid_h2();
  auto a = h2.a(), b = h2.b(), d = h2.d();
  a[2] = b[2] = d[2] = 0;
  return MediumParameters(h2.density(), h2.omega_m(), h2.reference(), a, b, d);
}

// N hbar / (epsilon0 c)
double coupling_scale(const MediumParameters& m) { return m.density() * oracle::kHbar / (8.8541878128e-12 * oracle::kC); }

}  // namespace

TEST_SUITE("propagator") {
  TEST_CASE("general constants are the expansion of the medium coefficients") {
    const auto h2 = MediumParameters::solid_h2();
    const auto w0 = Frequency::from_wavelength_nm(800);
    const double C = coupling_scale(h2), wm = h2.omega_m().value(), w = w0.value();
    const auto t = assemble_coefficients(h2, w0, {}, 0, 0);
    auto a = [&](double x) { return C * x * h2.at(x).a.value; };
    auto b = [&](double x) { return C * x * h2.at(x).b.value; };
    auto g = [&](double x) { return C * x * h2.at(x - wm).d.value; };
    auto hh = [&](double x) { return C * x * h2.at(x).d.value; };
    const auto ea = expand(a, w, w), eb = expand(b, w, w), eg = expand(g, w + wm, w), eh = expand(hh, w - wm, w);
    const auto& G = t.general;
    CHECK(G.A == doctest::Approx(ea.c0).epsilon(1e-6));
    CHECK(G.B == doctest::Approx(eb.c0).epsilon(1e-6));
    CHECK(G.K == doctest::Approx(eg.c0).epsilon(1e-6));
    CHECK(G.Q == doctest::Approx(eh.c0).epsilon(1e-6));
    CHECK(G.A1 == doctest::Approx(ea.c1).epsilon(1e-6));
    CHECK(G.K1 == doctest::Approx(eg.c1).epsilon(1e-6));
    CHECK(G.Q1 == doctest::Approx(eh.c1).epsilon(1e-6));
    CHECK(G.A2 == doctest::Approx(ea.c2).epsilon(1e-6));
    CHECK(G.B2 == doctest::Approx(eb.c2).epsilon(1e-6));
    CHECK(G.K2 == doctest::Approx(eg.c2).epsilon(1e-6));
    CHECK(G.Q2 == doctest::Approx(eh.c2).epsilon(1e-6));
    // h2 violates the ordering chain at 800 nm
    CHECK_FALSE(t.warnings.empty());
  }

  TEST_CASE("reduced constants and the coupling parameter") {
    const auto h2 = MediumParameters::solid_h2();
    const auto t = assemble_coefficients(h2, Frequency::from_wavelength_nm(800), {}, 0, 0);
    const double wm = h2.omega_m().value();
    // C wm d0 by hand: 1.033e-3 * 7.8164e14 * 5.50e-8
    CHECK(t.reduced.K == doctest::Approx(4.44e4).epsilon(0.01));
    CHECK(t.reduced.Q == -t.reduced.K);
    CHECK(coupling_scale(h2) == doctest::Approx(1.033e-3).epsilon(0.01));
    CHECK(t.reduced.K1 == doctest::Approx(coupling_scale(h2) * 5.50e-8).epsilon(0.01));
    const double rho0 = std::sin(0.4) * std::cos(0.4);
    CHECK(2 * t.reduced.K * rho0 == doctest::Approx(coupling_alpha(h2, rho0)).epsilon(1e-12));
    CHECK(2 * t.reduced.K * rho0 == doctest::Approx(3.19e4).epsilon(0.01));
    CHECK(t.omega_m.value() == wm);
  }

  TEST_CASE("dispersionless medium zeroes the phase and dispersion constants") {
    const auto m = MediumParameters::solid_h2().dispersionless();
    const auto t = assemble_coefficients(m, Frequency::from_wavelength_nm(800), {}, 0, 0);
    for (const auto* c : {&t.general, &t.reduced}) {
      CHECK(c->A == 0.0);
      CHECK(c->B == 0.0);
      CHECK(c->A2 == 0.0);
      CHECK(c->B2 == 0.0);
      CHECK(c->K2 == 0.0);
      CHECK(c->Q2 == 0.0);
    }
    CHECK(t.general.K == doctest::Approx(-t.general.Q).epsilon(1e-12));
    CHECK(t.general.K1 == doctest::Approx(t.general.Q1).epsilon(1e-12));
    CHECK(t.warnings.empty());
  }

  TEST_CASE("zero Raman matrix element switches the coupling off") {
    const auto h2 = MediumParameters::solid_h2();
    const MediumParameters m(h2.density(), h2.omega_m(), h2.reference(), h2.a(), h2.b(), {0.0, 0.0, 0.0});
    const auto grid = TimeGrid::centered(256, 1e-16);
    const auto w = positive_omegas(grid);
    const auto t = assemble_coefficients(m, Frequency::from_wavelength_nm(800), w, -2, 2);
    CHECK(t.general.K == 0.0);
    CHECK(t.general.Q == 0.0);
    for (std::size_t k = 0; k < w.size(); ++k) {
      CHECK(t.g_w[k] == 0.0);
      CHECK(t.h_w[k] == 0.0);
    }
    for (int q = -2; q <= 2; ++q) CHECK(t.sideband(q).g.value == 0.0);
    CHECK(w.size() == 129);
    CHECK(w[1] == doctest::Approx(grid.domega()));
  }

  TEST_CASE("coherence profile applies the phase wave exactly") {
    const PreparedCoherence c(-0.4, 0.3, 1e5);
    const auto p = CoherenceProfile::prepared(c);
    CHECK(p.is_uniform());
    CHECK(p.constant_populations());
    const auto s = p.at(2e-5);
    CHECK(std::abs(s.ab - c.coherence_at(2e-5)) < 1e-15);
    CHECK(p.max_coherence() == doctest::Approx(c.rho0()));

    const auto q = CoherenceProfile::sampled({0.0, 1.0}, {TwoLevelState::ground(), TwoLevelState(0.5, 0.5, 0.5)});
    CHECK(q.at(0.5).aa == doctest::Approx(0.75));
    CHECK(q.at(0.5).ab.real() == doctest::Approx(0.25));
    CHECK(q.at(3.0).bb == doctest::Approx(0.5));
    CHECK_FALSE(q.constant_populations());
    CHECK_THROWS_AS(CoherenceProfile::sampled({0.0, 0.0}, {TwoLevelState::ground(), TwoLevelState::ground()}),
                    std::invalid_argument);
  }

  TEST_CASE("config validation and scheme names") {
    PropagationConfig cfg;
    cfg.z_end = -1.0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    for (auto s : {Scheme::FrequencyDomain, Scheme::SidebandSvea, Scheme::SidebandFull, Scheme::TimeDomainFull,
                   Scheme::TimeDomainOffResonant, Scheme::Dispersionless})
      CHECK(parse_scheme(to_string(s)) == s);
    CHECK_THROWS_AS(parse_scheme("bogus"), std::invalid_argument);
  }

  TEST_CASE("time domain without coherence is a pure spectral phase") {
    const auto h2 = MediumParameters::solid_h2();
    const auto w0 = Frequency::from_wavelength_nm(800);
    const double tm = 2 * pi / h2.omega_m().value();
    const auto grid = TimeGrid::centered(2048, 16 * tm / 2048);
    const auto in = analytic_signal(make_pulse(grid, {1.0, w0, 5e-15, 0.0}));
    const auto t = assemble_coefficients(h2, w0, {}, 0, 0);
    PropagationConfig cfg;
    cfg.z_end = 20e-6;
    cfg.scheme = Scheme::TimeDomainFull;
    const auto out = propagate_time_domain(in, CoherenceProfile::uniform(TwoLevelState::ground(), 0.0), t, cfg);

    Fft fft(grid.size());
    std::vector<cplx> si(in.samples()), so(out.samples());
    fft.to_frequency(si, si);
    fft.to_frequency(so, so);
    const auto& c = t.general;
    double worst = 0.0, peak = 0.0;
    for (auto v : si) peak = std::max(peak, std::abs(v));
    for (std::size_t k = 1; 2 * k < grid.size(); ++k) {
      const double w = grid.omega(k);
      const double phase = (c.A + w * (c.A1 + 0.5 * w * c.A2)) * cfg.z_end;
      worst = std::max(worst, std::abs(so[k] - si[k] * std::polar(1.0, phase)) / peak);
    }
    CHECK(worst < 1e-10);
    // dispersion broadens the pulse but keeps its energy
    CHECK(time_energy(out.real_part()) == doctest::Approx(time_energy(in.real_part())).epsilon(1e-9));
    CHECK(intensity_fwhm(out) > intensity_fwhm(in));
  }

  TEST_CASE("frequency domain rejects incommensurate grids and foreign tables") {
    Fig2Setup s(1024);
    const auto t = assemble_coefficients(s.medium, s.w0, positive_omegas(s.grid), 0, 0);
    PropagationConfig cfg;
    cfg.z_end = s.z;
    const auto bad_grid = TimeGrid::centered(1024, 64 * s.tm / 1024 * 1.013);
    const auto bad = make_pulse(bad_grid, {1.0, s.w0, 10 * s.tm, 0.0});
    const auto tb = assemble_coefficients(s.medium, s.w0, positive_omegas(bad_grid), 0, 0);
    CHECK_THROWS_AS(propagate_frequency_domain(spectrum_of(bad), s.profile(), tb, cfg), AlignmentError);
    const auto t_other = assemble_coefficients(s.medium, s.w0, {}, 0, 0);
    CHECK_THROWS_AS(propagate_frequency_domain(spectrum_of(s.input), s.profile(), t_other, cfg), std::invalid_argument);
    CHECK_NOTHROW(propagate_frequency_domain(spectrum_of(s.input), s.profile(), t, cfg));
  }

  TEST_CASE("all schemes reproduce the dispersionless beat solution") {
    Fig2Setup s;
    const auto ref = s.analytic();
    const auto t = assemble_coefficients(s.medium, s.w0, positive_omegas(s.grid), -5, 12);
    PropagationConfig cfg;
    cfg.z_end = s.z;

    cfg.scheme = Scheme::FrequencyDomain;
    const auto fd = field_of(propagate_frequency_domain(spectrum_of(s.input), s.profile(), t, cfg));
    CHECK(rel_l2(fd.samples(), ref.samples()) < 0.01);

    for (auto scheme : {Scheme::Dispersionless, Scheme::TimeDomainOffResonant, Scheme::TimeDomainFull}) {
      CAPTURE(to_string(scheme));
      cfg.scheme = scheme;
      const auto td = propagate_time_domain(analytic_signal(s.input), s.profile(), t, cfg).real_part();
      CHECK(rel_l2(td.samples(), ref.samples()) < 0.01);
    }

    const auto set = decompose_sidebands(analytic_signal(s.input), s.w0, s.medium.omega_m(), -5, 12, 4);
    const auto sb = propagate_sidebands(set, s.profile(), t, cfg, true);
    const auto sf = synthesize_sidebands(sb, s.grid).real_part();
    CHECK(rel_l2(sf.samples(), ref.samples()) < 0.01);
  }

  TEST_CASE("frequency domain converges at fourth order in dz") {
    Fig2Setup s(4096);
    const auto t = assemble_coefficients(s.medium, s.w0, positive_omegas(s.grid), 0, 0);
    std::vector<std::vector<cplx>> r;
    for (double dz : {4.8e-8, 2.4e-8, 1.2e-8}) {
      PropagationConfig cfg;
      cfg.z_end = s.z;
      cfg.dz = dz;
      r.push_back(propagate_frequency_domain(spectrum_of(s.input), s.profile(), t, cfg).amplitude());
    }
    const double ratio = rel_l2(r[0], r[1]) / rel_l2(r[1], r[2]);
    CHECK(ratio >= 8.0);
  }

  TEST_CASE("step size guard") {
    Fig2Setup s(1024);
    const auto t = assemble_coefficients(s.medium, s.w0, positive_omegas(s.grid), 0, 0);
    PropagationConfig cfg;
    cfg.z_end = s.z;
    cfg.dz = s.z;
    try {
      propagate_frequency_domain(spectrum_of(s.input), s.profile(), t, cfg);
      FAIL("expected StepSizeError");
    } catch (const StepSizeError& e) {
      CHECK(std::string(e.what()).find("dz") != std::string::npos);
    }
  }

  TEST_CASE("time domain needs a grid that resolves the upshifted carrier") {
    Fig2Setup s(1024);
    const auto t = assemble_coefficients(s.medium, s.w0, {}, 0, 0);
    PropagationConfig cfg;
    cfg.z_end = 3.0 / coupling_alpha(s.medium, s.coherence.rho0());
    cfg.scheme = Scheme::Dispersionless;
    try {
      propagate_time_domain(analytic_signal(s.input), s.profile(), t, cfg);
      FAIL("expected GridResolutionError");
    } catch (const GridResolutionError& e) {
      CHECK(std::string(e.what()).find("dt") != std::string::npos);
    }
  }

  TEST_CASE("propagation is linear in the field") {
    Fig2Setup s(4096);
    const auto t = assemble_coefficients(quadratic_medium(), s.w0, positive_omegas(s.grid), 0, 0);
    PropagationConfig cfg;
    cfg.z_end = 0.5 * s.z;
    cfg.scheme = Scheme::TimeDomainFull;
    const auto a = analytic_signal(s.input);
    const auto b = analytic_signal(make_pulse(s.grid, {0.5, Frequency::from_rad_per_s(4.7 * s.wm), 6 * s.tm, 3 * s.tm}));
    std::vector<cplx> sum(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) sum[k] = 2.0 * a[k] - 3.0 * b[k];
    const auto pa = propagate_time_domain(a, s.profile(), t, cfg);
    const auto pb = propagate_time_domain(b, s.profile(), t, cfg);
    const auto ps = propagate_time_domain(AnalyticField(s.grid, sum), s.profile(), t, cfg);
    std::vector<cplx> lin(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) lin[k] = 2.0 * pa[k] - 3.0 * pb[k];
    CHECK(rel_l2(ps.samples(), lin) < 1e-10);
  }

  TEST_CASE("slowly varying sidebands of a monochromatic input follow Bessel functions") {
    const auto m = MediumParameters::solid_h2().dispersionless();
    PreparedCoherence c(-0.4, 0.0, 0.0);
    c = c.with_kappa(kappa_of(m, c.state_at(0)));
    const double wm = m.omega_m().value();
    const auto w0 = Frequency::from_rad_per_s(1000 * wm);
    const double alpha = coupling_alpha(m, c.rho0());
    const double gz = 0.3, z = gz / (1000 * alpha);
    const int qn = 6;
    const auto t = assemble_coefficients(m, w0, {}, -qn, qn);
    std::vector<cplx> env(2 * qn + 1, 0.0);
    env[qn] = 1.0;
    const SidebandSet in(w0, m.omega_m(), -qn, env);
    PropagationConfig cfg;
    cfg.z_end = z;
    cfg.scheme = Scheme::SidebandSvea;
    const auto out = propagate_sidebands(in, CoherenceProfile::prepared(c), t, cfg, false);
    for (int q = -4; q <= 4; ++q) {
      CAPTURE(q);
      const double j = std::abs(std::cyl_bessel_j(std::abs(q), gz));
      CHECK(std::abs(out.at(q)) == doctest::Approx(j).epsilon(0.01));
    }
    for (int q = 1; q <= 3; ++q) CHECK(std::abs(out.at(q)) == doctest::Approx(std::abs(out.at(-q))).epsilon(1e-3));
    CHECK(out.photon_flux() == doctest::Approx(in.photon_flux()).epsilon(1e-6));
  }

  TEST_CASE("slowly varying sidebands match the exact monochromatic solution") {
    const auto m = MediumParameters::solid_h2().dispersionless();
    PreparedCoherence c(-0.4, 0.0, 0.0);
    c = c.with_kappa(kappa_of(m, c.state_at(0)));
    const auto w0 = Frequency::from_rad_per_s(15.2 * m.omega_m().value());
    const double z = 0.3 / coupling_alpha(m, c.rho0());
    const int lo = -14, hi = 30;
    const auto t = assemble_coefficients(m, w0, {}, lo, hi);
    std::vector<cplx> env(hi - lo + 1, 0.0);
    env[-lo] = 1.0;
    PropagationConfig cfg;
    cfg.z_end = z;
    const auto out = propagate_sidebands(SidebandSet(w0, m.omega_m(), lo, env), CoherenceProfile::prepared(c), t, cfg, false);
    const auto ref = bessel_spectrum(BeatParameters::from_medium(m, c, z), w0, lo, hi, BesselMode::FullProduct);
    double num = 0, den = 0;
    for (int q = lo; q <= hi; ++q) {
      num += std::pow(std::abs(out.at(q)) - std::abs(ref.at(q)), 2);
      den += std::norm(ref.at(q));
    }
    CHECK(std::sqrt(num / den) < 0.01);
  }

  TEST_CASE("two-colour input") {
    const auto m = MediumParameters::solid_h2().dispersionless();
    PreparedCoherence c(-0.4, 0.0, 0.0);
    c = c.with_kappa(kappa_of(m, c.state_at(0)));
    const double wm = m.omega_m().value();
    const auto w0 = Frequency::from_rad_per_s(1000 * wm);
    const double z = 0.4 / (1000 * coupling_alpha(m, c.rho0()));
    const int qn = 6;
    const cplx stokes(0.0, 0.7);
    const auto t = assemble_coefficients(m, w0, {}, -qn, qn);
    std::vector<cplx> env(2 * qn + 1, 0.0);
    env[qn] = 1.0;
    env[qn - 1] = stokes;
    const SidebandSet in(w0, m.omega_m(), -qn, env);
    PropagationConfig cfg;
    cfg.z_end = z;
    const auto out = propagate_sidebands(in, CoherenceProfile::prepared(c), t, cfg, false);
    // the analytic amplitudes live on the reduced time eta = tau + phi/wm at z = 0
    const auto p = BeatParameters::from_medium(m, c, z);
    const auto ref = bessel_spectrum(p, w0, -qn, qn, BesselMode::TwoColor, stokes * std::polar(1.0, -p.phi));
    for (int q = -4; q <= 4; ++q) {
      CAPTURE(q);
      CHECK(std::abs(out.at(q)) == doctest::Approx(std::abs(ref.at(q))).epsilon(0.01));
    }
    CHECK(out.photon_flux() == doctest::Approx(in.photon_flux()).epsilon(1e-6));
  }

  TEST_CASE("full sideband scheme requires sampled envelopes") {
    const auto m = MediumParameters::solid_h2();
    const auto w0 = Frequency::from_wavelength_nm(800);
    const auto t = assemble_coefficients(m, w0, {}, -1, 1);
    const SidebandSet in(w0, m.omega_m(), -1, {0.0, 1.0, 0.0});
    PropagationConfig cfg;
    cfg.z_end = 1e-6;
    CHECK_THROWS_AS(propagate_sidebands(in, CoherenceProfile::uniform(TwoLevelState::ground(), 0.0), t, cfg, true),
                    std::invalid_argument);
  }

  TEST_CASE("cascade: no drive leaves the medium in the ground state") {
    const auto h2 = MediumParameters::solid_h2();
    Envelope zero = [](double) { return cplx(0.0); };
    const auto up = Frequency::from_wavenumber_cm(28169.0);
    const auto lo = Frequency::from_rad_per_s(up.value() - h2.omega_m().value());
    const DriveConfig drive({up, zero}, {lo, zero}, h2.omega_m(), {-2 * pi * 50e6, 25e3, 1e7});
    PropagationConfig cfg;
    cfg.z_end = 1e-6;
    cfg.grid = TimeGrid(-20e-9, 0.4e-9, 101);
    const auto r = cascade_selfconsistent(drive, h2, cfg);
    for (const auto& row : r.state)
      for (const auto& s : row) {
        CHECK(s.rho_aa() == doctest::Approx(1.0));
        CHECK(std::abs(s.rho_ab()) < 1e-12);
      }
  }

  TEST_CASE("cascade: fast dephasing suppresses the coherence") {
    const auto h2 = MediumParameters::solid_h2();
    const double amp = std::sqrt(2 * 1e13 / (constants::c * constants::epsilon0));
    const double sigma = gaussian_sigma(10e-9, WidthConvention::IntensityFwhm);
    Envelope env = [=](double t) { return cplx(amp * std::exp(-t * t / (2 * sigma * sigma))); };
    const auto up = Frequency::from_wavenumber_cm(28169.0);
    const auto lo = Frequency::from_rad_per_s(up.value() - h2.omega_m().value());
    PropagationConfig cfg;
    cfg.z_end = 2e-6;
    cfg.grid = TimeGrid(-20e-9, 0.4e-9, 101);
    EvolveOptions ev;
    ev.rel_tol = 1e-8;
    ev.abs_tol = 1e-10;

    const DriveConfig slow({up, env}, {lo, env}, h2.omega_m(), {-2 * pi * 50e6, 25e3, 1e7});
    const auto rs = cascade_selfconsistent(slow, h2, cfg, ev);
    const auto k0 = rs.index_of(0.0);
    CHECK(std::abs(rs.state[0][k0].rho_ab()) > 0.3);
    for (std::size_t i = 1; i < rs.photon_flux.size(); ++i)
      CHECK(rs.photon_flux[i] == doctest::Approx(rs.photon_flux[0]).epsilon(1e-6));
    CHECK(rs.comb.back().q_max() == cfg.comb_q_max);
    const auto prof = rs.profile_at(0.0);
    CHECK(std::abs(prof.at(0.0).ab - rs.state[0][k0].rho_ab()) < 1e-12);

    const DriveConfig fast({up, env}, {lo, env}, h2.omega_m(), {-2 * pi * 50e6, 25e3, 1e12});
    const auto rf = cascade_selfconsistent(fast, h2, cfg, ev);
    CHECK(std::abs(rf.state[0][rf.index_of(0.0)].rho_ab()) < 0.05);
  }

  TEST_CASE("cascade: comb truncation is reported") {
    const auto h2 = MediumParameters::solid_h2();
    const double amp = std::sqrt(2 * 1e13 / (constants::c * constants::epsilon0));
    const double sigma = gaussian_sigma(10e-9, WidthConvention::IntensityFwhm);
    Envelope env = [=](double t) { return cplx(amp * std::exp(-t * t / (2 * sigma * sigma))); };
    const auto up = Frequency::from_wavenumber_cm(28169.0);
    const auto lo = Frequency::from_rad_per_s(up.value() - h2.omega_m().value());
    const DriveConfig drive({up, env}, {lo, env}, h2.omega_m(), {-2 * pi * 50e6, 25e3, 1e7});
    PropagationConfig cfg;
    cfg.z_end = 20e-6;
    cfg.grid = TimeGrid(-20e-9, 0.4e-9, 101);
    cfg.comb_q_min = -2;
    cfg.comb_q_max = 2;
    CHECK_THROWS_AS(cascade_selfconsistent(drive, h2, cfg), CombOverflowError);
  }

  TEST_CASE("group-velocity dispersion length and degradation factor") {
    const auto h2 = MediumParameters::solid_h2();
    const PreparedCoherence c(-0.4, 0.0, 0.0);
    const auto w0 = Frequency::from_wavelength_nm(800);
    const double alpha = coupling_alpha(h2, c.rho0());
    const auto r = gvd_analysis(h2, c.state_at(0), w0, alpha);
    const double ca = std::cos(0.4) * std::cos(0.4), sb = std::sin(0.4) * std::sin(0.4);
    const double k2 = 2 * coupling_scale(h2) * (h2.at(w0.value()).a.d1 * ca + h2.at(w0.value()).b.d1 * sb);
    CHECK(r.k2 == doctest::Approx(k2).epsilon(1e-9));
    CHECK(r.k2 == doctest::Approx(6.68e-27).epsilon(0.01));
    REQUIRE(r.finite);
    const double wm = h2.omega_m().value();
    CHECK(r.L_opt * std::sinh(alpha * r.L_opt) ==
          doctest::Approx(pi / (2 * wm * w0.value() * k2)).epsilon(1e-9));
    CHECK(r.L_opt == doctest::Approx(52e-6).epsilon(0.10));
    CHECK(r.D == doctest::Approx(3.0).epsilon(0.05));
    CHECK(r.gamma == doctest::Approx(1 + 2 * w0.value() / wm * std::sinh(alpha * r.L_opt)));

    const auto flat = gvd_analysis(h2.dispersionless(), c.state_at(0), w0, alpha);
    CHECK_FALSE(flat.finite);
    CHECK(std::isinf(flat.L_opt));
    CHECK_THROWS_AS(gvd_analysis(h2, c.state_at(0), w0, 0.0), std::invalid_argument);
  }
}
