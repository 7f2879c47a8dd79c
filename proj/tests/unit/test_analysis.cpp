#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ramanbeat/analysis/diagnostics.hpp"
#include "ramanbeat/analytic/beat.hpp"
#include "ramanbeat/core/errors.hpp"
#include "ramanbeat/core/pulse.hpp"
#include "ramanbeat/propagator/propagate.hpp"

using namespace ramanbeat;
using std::numbers::pi;

namespace {

const Frequency kWm = Frequency::from_wavenumber_cm(4149.7);
const double kTm = 2 * pi / kWm.value();

// Fig. 2 probe: 10 T_m pulse at 5.2 omega_m
struct Train {
  TimeGrid grid = TimeGrid::centered(16384, 64 * kTm / 16384);
  Frequency w0 = Frequency::from_rad_per_s(5.2 * kWm.value());
  SampledField input = make_pulse(grid, {1.0, w0, 10 * kTm, 0.0});
  SampledField at(double alpha_z) const {
    return propagate_dispersionless(input, BeatParameters::from_alpha_z(alpha_z, kWm));
  }
};

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("gaussian width, centroid and translation invariance") {
    const auto grid = TimeGrid::centered(4096, 0.05e-15);
    const auto w0 = Frequency::from_wavelength_nm(800);
    const auto a = measure_pulse(make_pulse(grid, {2.0, w0, 10e-15, 0.0}));
    CHECK(std::abs(a.intensity_fwhm - 10e-15) < grid.dt());
    CHECK(a.peak_amplitude == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(std::abs(a.centroid) < grid.dt());
    CHECK(a.subpulses == 1);
    CHECK_FALSE(a.train_period.has_value());
    CHECK(a.mean_frequency == doctest::Approx(w0.value()).epsilon(1e-3));
    // integral of A^2 exp(-t^2/sigma^2) cos^2 = A^2 sigma sqrt(pi) / 2
    const double sigma = gaussian_sigma(10e-15, WidthConvention::IntensityFwhm);
    CHECK(a.energy == doctest::Approx(4.0 * sigma * std::sqrt(pi) / 2).epsilon(1e-3));

    const double shift = 200 * grid.dt();
    const auto b = measure_pulse(make_pulse(grid, {2.0, w0, 10e-15, shift}));
    CHECK(b.intensity_fwhm == doctest::Approx(a.intensity_fwhm).epsilon(1e-9));
    CHECK(b.centroid - a.centroid == doctest::Approx(shift).epsilon(1e-9));
    CHECK(b.peak_amplitude == doctest::Approx(a.peak_amplitude).epsilon(1e-9));
  }

  TEST_CASE("compression factor against a reference") {
    const auto grid = TimeGrid::centered(4096, 0.05e-15);
    const auto w0 = Frequency::from_wavelength_nm(800);
    const auto in = make_pulse(grid, {1.0, w0, 20e-15, 0.0});
    const auto out = make_pulse(grid, {1.0, w0, 5e-15, 0.0});
    CHECK(measure_pulse(out, in).compression_factor == doctest::Approx(4.0).epsilon(0.01));
    CHECK(measure_pulse(in).compression_factor == 1.0);
  }

  TEST_CASE("empty and truncated fields are rejected") {
    const auto grid = TimeGrid::centered(256, 1e-15);
    CHECK_THROWS_AS(measure_pulse(SampledField::zeros(grid)), EmptyFieldError);
    std::vector<double> cw(grid.size());
    for (std::size_t k = 0; k < cw.size(); ++k) cw[k] = std::cos(3e15 * grid.time(k));
    CHECK_THROWS_AS(measure_pulse(SampledField(grid, cw)), WindowingError);
  }

  TEST_CASE("beaten pulse train: period and sub-pulse width") {
    const Train t;
    const auto m14 = measure_pulse(t.at(1.4));
    REQUIRE(m14.train_period.has_value());
    CHECK(m14.subpulses >= 3);
    CHECK(*m14.train_period == doctest::Approx(kTm).epsilon(0.02));

    // around its maximum G = 1/(e^{az} sin^2 u + e^{-az} cos^2 u), u = wm x/2, and
    // |E|^2 ~ G^2 falls to half at sin^2 u = (sqrt2 - 1)/(e^{2az} - 1)
    auto width = [](double az) {
      return 4 * std::asin(std::sqrt((std::sqrt(2.0) - 1) / (std::exp(2 * az) - 1))) / kWm.value();
    };
    CHECK(m14.intensity_fwhm == doctest::Approx(width(1.4)).epsilon(0.03));
    const auto m06 = measure_pulse(t.at(0.6));
    CHECK(m06.intensity_fwhm == doctest::Approx(width(0.6)).epsilon(0.03));
    // asymptotically the sub-pulse length is a fixed fraction of T_m e^{-az}
    CHECK(width(3.0) * std::exp(3.0) / kTm == doctest::Approx(4 * std::sqrt(std::sqrt(2.0) - 1) / (2 * pi)).epsilon(0.01));
    CHECK(m14.peak_amplitude == doctest::Approx(std::exp(1.4)).epsilon(0.01));
  }

  TEST_CASE("spectrum of an unpropagated long pulse is a single line") {
    const Train t;
    const auto r = measure_spectrum(spectrum_of(t.input), t.w0, kWm);
    CHECK(r.q_stokes == 0);
    CHECK(r.q_antistokes == 0);
    CHECK_FALSE(r.continuous);
    CHECK(r.q_min == -5);
    CHECK(r.relative(0) == 1.0);

    const auto s = spectrum_of(t.input);
    double total = 0.0;
    for (std::size_t k = 0; k <= s.size() / 2; ++k) total += std::norm(s[k]);
    double binned = 0.0;
    for (double p : r.power) binned += p;
    CHECK(binned == doctest::Approx(total).epsilon(1e-9));
    CHECK(r.total_power == doctest::Approx(total).epsilon(1e-9));
  }

  TEST_CASE("anti-Stokes orders grow with alpha z while Stokes orders saturate") {
    const Train t;
    const auto r06 = measure_spectrum(spectrum_of(t.at(0.6)), t.w0, kWm);
    const auto r14 = measure_spectrum(spectrum_of(t.at(1.4)), t.w0, kWm);
    const double n = t.w0.value() / kWm.value();
    CAPTURE(r06.q_antistokes);
    CAPTURE(r14.q_antistokes);
    CAPTURE(r06.q_stokes);
    CAPTURE(r14.q_stokes);
    CHECK(r06.q_antistokes >= (std::exp(0.6) - 1) * n);
    CHECK(r14.q_antistokes >= (std::exp(1.4) - 1) * n);
    const double growth = r14.q_antistokes - r06.q_antistokes;
    CHECK(growth >= 0.7 * (std::exp(1.4) - std::exp(0.6)) * n);
    // the Stokes side is bounded by zero frequency
    CHECK(r14.q_stokes - r06.q_stokes >= -2);
    CHECK(r14.q_stokes >= r14.q_min);
    CHECK_FALSE(r06.continuous);
  }

  TEST_CASE("a short stretched probe has a continuous Stokes-side spectrum") {
    const auto grid = TimeGrid::centered(8192, 32 * kTm / 8192);
    const auto w0 = Frequency::from_rad_per_s(15.2 * kWm.value());
    const auto in = make_pulse(grid, {1.0, w0, 0.1 * kTm, 0.0});
    const auto out = propagate_dispersionless(in, BeatParameters::from_alpha_z(0.8, kWm));
    const auto r = measure_spectrum(spectrum_of(out), w0, kWm);
    CHECK(r.continuous);
    double stokes = 0.0, anti = 0.0;
    for (int q = r.q_min; q < 0; ++q) stokes += r.at(q);
    for (int q = 1; q <= r.q_max(); ++q) anti += r.at(q);
    CHECK(stokes > 3 * anti);
    const auto m = measure_pulse(out);
    CHECK(m.subpulses == 1);
    CHECK(m.mean_frequency < w0.value());
  }

  TEST_CASE("run comparison") {
    const Train t;
    const auto a = t.at(0.6);
    const auto same = compare_runs(a, a);
    CHECK(same.l2 == 0.0);
    CHECK(same.peak_ratio == 1.0);
    CHECK(same.fwhm_ratio == 1.0);

    const auto b = t.at(0.7);
    const auto ab = compare_runs(a, b), ba = compare_runs(b, a);
    CHECK(ab.l2 == ba.l2);
    CHECK(ab.peak_ratio * ba.peak_ratio == doctest::Approx(1.0));
    CHECK(ab.peak_ratio < 1.0);

    const auto other = TimeGrid::centered(16384, 64 * kTm / 16000);
    CHECK_THROWS_AS(compare_runs(a, SampledField::zeros(other)), std::domain_error);
  }

  TEST_CASE("analytic and numerical dispersionless runs agree") {
    const auto medium = MediumParameters::solid_h2().dispersionless();
    PreparedCoherence c(-0.4, 0.0, 0.0);
    c = c.with_kappa(kappa_of(medium, c.state_at(0)));
    const double z = 0.6 / coupling_alpha(medium, c.rho0());
    const auto grid = TimeGrid::centered(8192, kTm / 128);
    const auto w0 = Frequency::from_rad_per_s(5.2 * kWm.value());
    const auto in = make_pulse(grid, {1.0, w0, 10 * kTm, 0.0});
    const auto ref = propagate_dispersionless_lab(in, BeatParameters::from_medium(medium, c, z));
    PropagationConfig cfg;
    cfg.z_end = z;
    const auto tables = assemble_coefficients(medium, w0, positive_omegas(grid), 0, 0);
    const auto num = field_of(propagate_frequency_domain(spectrum_of(in), CoherenceProfile::prepared(c), tables, cfg));
    const auto cmp = compare_runs(num, ref);
    CHECK(cmp.l2 < 0.01);
    CHECK(cmp.peak_ratio == doctest::Approx(1.0).epsilon(0.01));
    CHECK(cmp.fwhm_ratio == doctest::Approx(1.0).epsilon(0.01));
  }
}
