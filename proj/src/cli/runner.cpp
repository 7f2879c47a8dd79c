#include "ramanbeat/cli/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <thread>

#include "ramanbeat/analysis/diagnostics.hpp"
#include "ramanbeat/analytic/beat.hpp"
#include "ramanbeat/analytic/conservation.hpp"
#include "ramanbeat/analytic/spectrum.hpp"
#include "CLI11.hpp"
#include "ramanbeat/core/errors.hpp"
#include "ramanbeat/core/sidebands.hpp"
#include "ramanbeat/medium/rabi.hpp"
#include "ramanbeat/propagator/cascade.hpp"
#include "ramanbeat/propagator/gvd.hpp"
#include "ramanbeat/propagator/propagate.hpp"

#ifndef RAMANBEAT_VERSION
#define RAMANBEAT_VERSION "unknown"
#endif

namespace ramanbeat::cli {

namespace {

constexpr double pi = std::numbers::pi;

std::string now_iso() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Column-oriented series written as CSV (header row with units) or JSON.
class Table {
 public:
  void add(std::string name, std::vector<double> values) { cols_.emplace_back(std::move(name), std::move(values)); }

  std::filesystem::path write(const std::filesystem::path& dir, const std::string& stem, Format format) const {
    std::filesystem::create_directories(dir);
    const auto path = dir / (stem + (format == Format::Csv ? ".csv" : ".json"));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    const std::size_t rows = cols_.empty() ? 0 : cols_.front().second.size();
    if (format == Format::Csv) {
      for (std::size_t c = 0; c < cols_.size(); ++c) out << (c ? "," : "") << cols_[c].first;
      out << '\n';
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols_.size(); ++c) out << (c ? "," : "") << fmt(cols_[c].second[r]);
        out << '\n';
      }
    } else {
      out << "{\"columns\":[";
      for (std::size_t c = 0; c < cols_.size(); ++c) out << (c ? "," : "") << json(cols_[c].first).dump();
      out << "],\"rows\":[";
      for (std::size_t r = 0; r < rows; ++r) {
        out << (r ? "," : "") << '[';
        for (std::size_t c = 0; c < cols_.size(); ++c) out << (c ? "," : "") << fmt(cols_[c].second[r]);
        out << ']';
      }
      out << "]}\n";
    }
    return path;
  }

 private:
  std::vector<std::pair<std::string, std::vector<double>>> cols_;
};

class Context {
 public:
  Context(const std::string& command, const Scenario& s, const RunOptions& o) : s_(s), o_(o) {
    rec_.name = s.name;
    rec_.command = command;
    rec_.hash = scenario_hash(s.resolved);
    rec_.version = RAMANBEAT_VERSION;
    rec_.started = now_iso();
    rec_.parameters = json::object();
    rec_.metrics = json::object();
  }

  const Scenario& s() const { return s_; }
  json& metrics() { return rec_.metrics; }
  json& parameters() { return rec_.parameters; }
  double wm() const { return s_.medium.omega_m().value(); }
  double tm() const { return 2 * pi / wm(); }

  void emit(const std::string& output, const std::string& stem, const Table& t) {
    if (!o_.write_files || !s_.wants(output)) return;
    rec_.files.push_back(t.write(o_.out_dir, stem, o_.format).filename().string());
  }

  RunRecord finish() {
    rec_.finished = now_iso();
    if (o_.write_files) {
      std::filesystem::create_directories(o_.out_dir);
      const auto path = o_.out_dir / "record.json";
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + path.string());
      out << rec_.to_json().dump(2) << '\n';
    }
    return rec_;
  }

 private:
  const Scenario& s_;
  const RunOptions& o_;
  RunRecord rec_;
};

json derivs_json(const Derivs& d) { return json::array({d.value, d.d1, d.d2}); }

json constants_json(const TimeDomainConstants& c) {
  return {{"A", c.A}, {"B", c.B}, {"K", c.K}, {"Q", c.Q}, {"A1", c.A1}, {"B1", c.B1},
          {"K1", c.K1}, {"Q1", c.Q1}, {"A2", c.A2}, {"B2", c.B2}, {"K2", c.K2}, {"Q2", c.Q2}};
}

json pulse_json(const PulseMetrics& m) {
  json j = {{"peak_amplitude_V_m", m.peak_amplitude},
            {"peak_intensity", m.peak_intensity},
            {"intensity_fwhm_s", m.intensity_fwhm},
            {"centroid_s", m.centroid},
            {"energy", m.energy},
            {"mean_frequency_rad_s", m.mean_frequency},
            {"compression_factor", m.compression_factor},
            {"subpulses", m.subpulses}};
  j["train_period_s"] = m.train_period ? json(*m.train_period) : json(nullptr);
  return j;
}

json spectral_json(const SpectralReport& r) {
  return {{"q_stokes", r.q_stokes},
          {"q_antistokes", r.q_antistokes},
          {"threshold", r.threshold},
          {"valley_ratio", r.valley_ratio},
          {"continuous", r.continuous}};
}

// Medium preparation: the state, its coherence wave and the coupling parameter.
struct Prepared {
  PreparedCoherence coherence{0.0, 0.0, 0.0};
  json info;
};

Prepared prepare(const Scenario& s) {
  Prepared p;
  if (s.direct) {
    p.coherence = *s.direct;
    p.info = {{"mode", "direct"}, {"theta_rad", s.direct->theta()}};
  } else if (s.adiabatic) {
    const auto& d = *s.drive;
    const double amp = d.amplitude();
    const SidebandSet comb(d.upper, s.medium.omega_m(), -1, {amp, amp});
    const auto ext = rabi_and_stark(comb, s.medium);
    const auto r = adiabatic_state(ext, d.dynamics.delta, s.medium);
    p.coherence = r.coherence;
    p.info = {{"mode", "adiabatic"},
              {"theta_rad", r.coherence.theta()},
              {"drive_amplitude_V_m", amp},
              {"stark_aa_rad_s", ext.aa},
              {"stark_bb_rad_s", ext.bb},
              {"rabi_ab_rad_s", std::abs(ext.ab)}};
  } else {
    throw ValidationError("preparation", "required by this command");
  }
  const auto st = p.coherence.state_at(0);
  p.info["rho_aa"] = st.rho_aa();
  p.info["rho_bb"] = st.rho_bb();
  p.info["abs_rho_ab"] = std::abs(st.rho_ab());
  p.info["phi0_rad"] = p.coherence.phi0();
  p.info["kappa_per_m"] = p.coherence.kappa();
  return p;
}

double require_z(const Scenario& s) {
  if (!s.z) throw ValidationError("length.z_um", "required by this command");
  return *s.z;
}

const ProbeSpec* probe_of(const Scenario& s) { return s.probe ? &*s.probe : nullptr; }

// Analytic engine: the dispersionless solution on the reduced time eta.
struct BeatRun {
  BeatParameters p;
  SampledField in = SampledField::zeros(TimeGrid::centered(2, 1.0));
  SampledField out = SampledField::zeros(TimeGrid::centered(2, 1.0));
};

BeatRun run_beat(Context& ctx) {
  const auto& s = ctx.s();
  BeatRun b;
  if (s.alpha_z) {
    b.p = BeatParameters::from_alpha_z(*s.alpha_z, s.medium.omega_m());
    if (s.direct || s.adiabatic) ctx.metrics()["note"] = "alpha_z given directly; preparation ignored";
  } else {
    const auto prep = prepare(s);
    b.p = BeatParameters::from_medium(s.medium, prep.coherence, require_z(s));
    ctx.parameters()["preparation"] = prep.info;
  }
  ctx.parameters()["beat"] = {{"alpha_per_m", b.p.alpha}, {"z_m", b.p.z}, {"kappa_per_m", b.p.kappa},
                              {"phi_rad", b.p.phi}};
  ctx.metrics()["alpha_z"] = b.p.alpha_z();
  ctx.metrics()["exp_alpha_z"] = std::exp(b.p.alpha_z());

  const auto& grid = s.grid;
  if (const auto* pr = probe_of(s)) {
    // the input is read on s = eta at z = 0
    const double eta_p = pr->peak_in_eta ? pr->peak : pr->peak + b.p.phi / ctx.wm();
    b.in = make_pulse(grid, {pr->amplitude, pr->carrier, pr->width, eta_p, pr->convention});
    b.out = propagate_dispersionless(b.in, b.p);
  } else {
    b.in = b.out = SampledField::zeros(grid);
  }

  Table t;
  std::vector<double> eta(grid.size()), tau(grid.size()), ein(grid.size()), eout(grid.size()), nin(grid.size()),
      nout(grid.size()), g(grid.size()), chi(grid.size());
  const double peak = b.in.peak();
  const double scale = peak > 0.0 ? 1.0 / peak : 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    eta[k] = grid.time(k) / ctx.tm();
    tau[k] = b.p.tau_of_eta(grid.time(k)) * 1e15;
    ein[k] = b.in[k];
    eout[k] = b.out[k];
    nin[k] = b.in[k] * scale;
    nout[k] = b.out[k] * scale;
    g[k] = gain_profile(grid.time(k), b.p);
    chi[k] = susceptibility_profile(grid.time(k), b.p, b.p.kappa);
  }
  t.add("eta_over_Tm", eta);
  t.add("tau_fs", tau);
  t.add("E_in_V_m", ein);
  t.add("E_out_V_m", eout);
  t.add("E_in_norm", nin);
  t.add("E_out_norm", nout);
  ctx.emit("field", "field", t);
  Table tg;
  tg.add("eta_over_Tm", eta);
  tg.add("G", g);
  tg.add("chi_shape", chi);
  ctx.emit("gain", "gain", tg);
  return b;
}

void spectrum_outputs(Context& ctx, const SampledField& in, const SampledField& out, Frequency carrier) {
  const auto si = spectrum_of(in), so = spectrum_of(out);
  const std::size_t half = si.size() / 2;
  double ref = 0.0;
  for (std::size_t k = 0; k <= half; ++k) ref = std::max(ref, std::norm(si[k]));
  const double scale = ref > 0.0 ? 1.0 / ref : 0.0;
  std::vector<double> w(half), pin(half), pout(half), nin(half), nout(half);
  for (std::size_t k = 0; k < half; ++k) {
    w[k] = si.omega(k) / ctx.wm();
    pin[k] = std::norm(si[k]);
    pout[k] = std::norm(so[k]);
    nin[k] = pin[k] * scale;
    nout[k] = pout[k] * scale;
  }
  Table t;
  t.add("omega_over_omega_m", w);
  t.add("power_in", pin);
  t.add("power_out", pout);
  t.add("power_in_norm", nin);
  t.add("power_out_norm", nout);
  ctx.emit("spectrum", "spectrum", t);

  if (ref == 0.0) return;
  const auto r = measure_spectrum(so, carrier, ctx.s().medium.omega_m());
  ctx.metrics()["spectrum"] = spectral_json(r);
  Table ts;
  std::vector<double> q, wq, pw, rel;
  for (int i = r.q_min; i <= r.q_max(); ++i) {
    q.push_back(i);
    wq.push_back((carrier.value() + i * ctx.wm()) / ctx.wm());
    pw.push_back(r.at(i));
    rel.push_back(r.relative(i));
  }
  ts.add("q", q);
  ts.add("omega_over_omega_m", wq);
  ts.add("power", pw);
  ts.add("relative", rel);
  ctx.emit("sidebands", "sidebands", ts);
}

RunRecord cmd_prepare(Context& ctx) {
  const auto& s = ctx.s();
  const auto& m = s.medium;
  ctx.parameters()["medium"] = {{"density_m3", m.density()},
                                {"omega_m_rad_s", m.omega_m().value()},
                                {"reference_rad_s", m.reference().value()},
                                {"a", m.a()},
                                {"b", m.b()},
                                {"d", m.d()},
                                {"coupling_scale", m.coupling_scale()},
                                {"from_levels", m.levels().has_value()}};
  ctx.metrics()["ordering_warnings"] = m.ordering_warnings();
  const auto prep = prepare(s);
  ctx.parameters()["preparation"] = prep.info;
  const double alpha = coupling_alpha(m, prep.coherence.rho0());
  ctx.metrics()["alpha_per_m"] = alpha;
  ctx.metrics()["coherence_velocity_m_s"] =
      prep.coherence.kappa() != 0.0 ? m.omega_m().value() / prep.coherence.kappa() : INFINITY;
  if (s.z) {
    ctx.metrics()["alpha_z"] = alpha * *s.z;
    ctx.metrics()["exp_alpha_z"] = std::exp(alpha * *s.z);
  }
  if (const auto* pr = probe_of(s)) {
    const double w0 = pr->carrier.value();
    const auto at = m.at(w0);
    ctx.metrics()["carrier"] = {{"omega0_rad_s", w0}, {"omega0_over_omega_m", w0 / m.omega_m().value()},
                                {"a", derivs_json(at.a)}, {"b", derivs_json(at.b)}, {"d", derivs_json(at.d)}};
    const auto tables = assemble_coefficients(m, pr->carrier, {}, 0, 0);
    ctx.metrics()["time_domain_general"] = constants_json(tables.general);
    ctx.metrics()["time_domain_reduced"] = constants_json(tables.reduced);
    if (alpha > 0.0) {
      const auto g = gvd_analysis(m, prep.coherence.state_at(0), pr->carrier, alpha);
      json gj = {{"k2_s2_per_m", g.k2}, {"finite", g.finite}};
      if (g.finite)
        gj.update({{"L_opt_m", g.L_opt}, {"gamma", g.gamma}, {"gamma0", g.gamma0}, {"D", g.D}});
      ctx.metrics()["gvd"] = gj;
    }
  }
  return ctx.finish();
}

RunRecord cmd_beat(Context& ctx, bool spectrum_only) {
  const auto b = run_beat(ctx);
  const auto& s = ctx.s();
  const auto* pr = probe_of(s);
  if (!pr) {
    ctx.metrics()["empty_probe"] = true;
    return ctx.finish();
  }
  const auto orders = sideband_orders(b.p, pr->carrier);
  ctx.metrics()["predicted_orders"] = {{"q_as", orders.q_as}, {"q_s", orders.q_s}, {"gamma_per_m", orders.gamma}};
  spectrum_outputs(ctx, b.in, b.out, pr->carrier);
  if (spectrum_only) {
    // monochromatic prediction for comparison with the binned spectrum
    const auto& r = ctx.metrics()["spectrum"];
    const int lo = r.value("q_stokes", 0) - 2, hi = r.value("q_antistokes", 0) + 2;
    const int qlo = std::max(lo, static_cast<int>(std::ceil(-pr->carrier.value() / ctx.wm())) + 1);
    const auto bs = bessel_spectrum(b.p, pr->carrier, qlo, hi, BesselMode::FullProduct);
    Table t;
    std::vector<double> q, amp;
    for (int i = qlo; i <= hi; ++i) {
      q.push_back(i);
      amp.push_back(std::norm(bs.at(i)));
    }
    t.add("q", q);
    t.add("monochromatic_power", amp);
    ctx.emit("sidebands", "bessel", t);
    ctx.metrics()["bessel_warnings"] = bs.warnings;
  } else {
    ctx.metrics()["pulse"] = pulse_json(measure_pulse(b.out, b.in));
    const auto c = conservation_report(b.in, b.out, pr->carrier, b.p);
    ctx.metrics()["conservation"] = {{"area_rel_error", c.area.rel_error},
                                     {"photon_number_rel_error", c.photon_number.rel_error},
                                     {"length_frequency_rel_error", c.length_frequency.rel_error},
                                     {"oscillations_in", c.oscillations_in},
                                     {"oscillations_out", c.oscillations_out}};
  }
  return ctx.finish();
}

// Numerical propagation of a probe through a prepared medium (lab local time).
AnalyticField propagate_probe(const Scenario& s, const AnalyticField& in, Frequency carrier,
                              const CoherenceProfile& medium, const PropagationConfig& cfg) {
  // orders at or below zero frequency are dropped
  const int lowest = 1 - static_cast<int>(std::ceil(carrier.value() / s.medium.omega_m().value()));
  const int q_min = std::max(s.sideband_min, lowest);
  const int q_max = std::max(s.sideband_max, q_min);
  const auto tables = assemble_coefficients(
      s.medium, carrier, cfg.scheme == Scheme::FrequencyDomain ? positive_omegas(in.grid()) : std::vector<double>{},
      q_min, q_max);
  switch (cfg.scheme) {
    case Scheme::FrequencyDomain:
      return analytic_signal(field_of(propagate_frequency_domain(spectrum_of(in.real_part()), medium, tables, cfg)));
    case Scheme::SidebandSvea:
    case Scheme::SidebandFull: {
      const auto set = decompose_sidebands(in, carrier, s.medium.omega_m(), q_min, q_max, s.decimation);
      const auto out = propagate_sidebands(set, medium, tables, cfg, cfg.scheme == Scheme::SidebandFull);
      return synthesize_sidebands(out, in.grid());
    }
    default:
      return propagate_time_domain(in, medium, tables, cfg);
  }
}

void field_outputs(Context& ctx, const AnalyticField& in, const AnalyticField& out, const AnalyticField* ref,
                   double phi, const std::string& stem) {
  const auto& grid = in.grid();
  const auto iin = in.intensity(), iout = out.intensity();
  const double peak = *std::max_element(iin.begin(), iin.end());
  const double scale = peak > 0.0 ? 1.0 / peak : 0.0;
  std::vector<double> tau(grid.size()), eta(grid.size()), ein(grid.size()), eout(grid.size()), nin(grid.size()),
      nout(grid.size()), nref;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    tau[k] = grid.time(k) * 1e15;
    eta[k] = (grid.time(k) + phi / ctx.wm()) / ctx.tm();
    ein[k] = in[k].real();
    eout[k] = out[k].real();
    nin[k] = iin[k] * scale;
    nout[k] = iout[k] * scale;
  }
  Table t;
  t.add("tau_fs", tau);
  t.add("eta_over_Tm", eta);
  t.add("E_in_V_m", ein);
  t.add("E_out_V_m", eout);
  t.add("I_in_norm", nin);
  t.add("I_out_norm", nout);
  if (ref) {
    const auto ir = ref->intensity();
    nref.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) nref[k] = ir[k] * scale;
    t.add("I_dispersionless_norm", nref);
  }
  ctx.emit(stem == "field" ? "field" : "probe", stem, t);
}

RunRecord cmd_propagate(Context& ctx) {
  const auto& s = ctx.s();
  const auto prep = prepare(s);
  const double z = require_z(s);
  ctx.parameters()["preparation"] = prep.info;
  const double alpha = coupling_alpha(s.medium, prep.coherence.rho0());
  const double phi = BeatParameters::from_medium(s.medium, prep.coherence, z).phi;
  ctx.metrics()["alpha_per_m"] = alpha;
  ctx.metrics()["alpha_z"] = alpha * z;
  ctx.metrics()["exp_alpha_z"] = std::exp(alpha * z);
  ctx.parameters()["scheme"] = to_string(s.run.scheme);
  const auto* pr = probe_of(s);
  if (!pr) {
    const auto zero = AnalyticField(s.grid, std::vector<cplx>(s.grid.size()));
    field_outputs(ctx, zero, zero, nullptr, phi, "field");
    ctx.metrics()["empty_probe"] = true;
    return ctx.finish();
  }
  const double tau_p = pr->peak_in_eta ? pr->peak - phi / ctx.wm() : pr->peak;
  const auto in_real = make_pulse(s.grid, {pr->amplitude, pr->carrier, pr->width, tau_p, pr->convention});
  const auto in = analytic_signal(in_real);
  const auto medium = CoherenceProfile::prepared(prep.coherence);
  const auto out = propagate_probe(s, in, pr->carrier, medium, s.run);

  std::optional<AnalyticField> ref;
  if (s.compare_dispersionless) {
    auto cfg = s.run;
    cfg.scheme = Scheme::Dispersionless;
    ref = propagate_probe(s, in, pr->carrier, medium, cfg);
    const auto cmp = compare_runs(out, *ref);
    ctx.metrics()["versus_dispersionless"] = {
        {"l2", cmp.l2}, {"peak_ratio", cmp.peak_ratio}, {"fwhm_ratio", cmp.fwhm_ratio}};
  }
  field_outputs(ctx, in, out, ref ? &*ref : nullptr, phi, "field");
  ctx.metrics()["pulse"] = pulse_json(measure_pulse(out, in));
  spectrum_outputs(ctx, in_real, out.real_part(), pr->carrier);
  return ctx.finish();
}

RunRecord cmd_cascade(Context& ctx) {
  const auto& s = ctx.s();
  if (!s.drive) throw ValidationError("drive", "required by cascade");
  const double z = require_z(s);
  const auto& d = *s.drive;
  auto cfg = s.run;
  cfg.grid = d.tau;
  EvolveOptions ev;
  ev.rel_tol = d.rel_tol;
  ev.abs_tol = d.abs_tol;
  const auto r = cascade_selfconsistent(d.config(s.medium.omega_m()), s.medium, cfg, ev);
  const auto k0 = r.index_of(d.peak_time);
  ctx.parameters()["drive"] = {{"upper_rad_s", d.upper.value()}, {"lower_rad_s", d.lower.value()},
                               {"amplitude_V_m", d.amplitude()}, {"z_m", z}};

  Table tc;
  std::vector<double> zu, raa, rbb, rab, arg, flux;
  double min_rab = INFINITY, drift = 0.0;
  for (std::size_t i = 0; i < r.z.size(); ++i) {
    const auto& st = r.state[i][k0];
    zu.push_back(r.z[i] * 1e6);
    raa.push_back(st.rho_aa());
    rbb.push_back(st.rho_bb());
    rab.push_back(std::abs(st.rho_ab()));
    arg.push_back(std::arg(st.rho_ab()));
    flux.push_back(r.photon_flux[i]);
    min_rab = std::min(min_rab, rab.back());
    drift = std::max(drift, std::abs(r.photon_flux[i] / r.photon_flux[0] - 1.0));
  }
  tc.add("z_um", zu);
  tc.add("rho_aa", raa);
  tc.add("rho_bb", rbb);
  tc.add("abs_rho_ab", rab);
  tc.add("arg_rho_ab", arg);
  tc.add("photon_flux", flux);
  ctx.emit("coherence", "coherence", tc);

  // drive comb at the exit, integrated over tau
  const auto& comb = r.comb.back();
  std::vector<double> q, wl, pw, rel;
  double pmax = 0.0;
  for (int i = comb.q_min(); i <= comb.q_max(); ++i) {
    double e = 0.0;
    for (const auto& v : comb.envelope(i)) e += std::norm(v);
    q.push_back(i);
    wl.push_back(Frequency::from_rad_per_s(comb.omega_q(i)).wavelength_nm());
    pw.push_back(e);
    pmax = std::max(pmax, e);
  }
  int lines = 0;
  for (double p : pw) {
    rel.push_back(pmax > 0.0 ? p / pmax : 0.0);
    if (rel.back() >= 1e-4) ++lines;
  }
  Table tq;
  tq.add("q", q);
  tq.add("wavelength_nm", wl);
  tq.add("power", pw);
  tq.add("relative", rel);
  ctx.emit("comb", "comb", tq);

  ctx.metrics()["abs_rho_ab_peak_entrance"] = rab.front();
  ctx.metrics()["abs_rho_ab_peak_min"] = min_rab;
  ctx.metrics()["drive_lines_above_1e-4"] = lines;
  ctx.metrics()["photon_flux_drift"] = drift;
  ctx.metrics()["z_steps"] = r.z.size() - 1;

  if (const auto* pr = probe_of(s)) {
    const auto medium = r.profile_at(d.peak_time);
    const auto in_real = make_pulse(s.grid, {pr->amplitude, pr->carrier, pr->width, pr->peak, pr->convention});
    const auto in = analytic_signal(in_real);
    auto pcfg = s.run;
    pcfg.z_end = z;
    const auto out = propagate_probe(s, in, pr->carrier, medium, pcfg);
    field_outputs(ctx, in, out, nullptr, 0.0, "probe");
    ctx.metrics()["probe"] = pulse_json(measure_pulse(out, in));
    spectrum_outputs(ctx, in_real, out.real_part(), pr->carrier);
  }
  return ctx.finish();
}

json flatten(const json& j, const std::string& prefix = "") {
  json out = json::object();
  for (const auto& [k, v] : j.items()) {
    const std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object()) out.update(flatten(v, key));
    else if (v.is_number() || v.is_boolean()) out[key] = v;
  }
  return out;
}

}  // namespace

json RunRecord::to_json() const {
  return {{"name", name},         {"command", command}, {"scenario_hash", hash}, {"version", version},
          {"parameters", parameters}, {"metrics", metrics}, {"files", files},      {"started", started},
          {"finished", finished}};
}

RunRecord run_scenario(const std::string& command, const Scenario& scenario, const RunOptions& options) {
  Context ctx(command, scenario, options);
  ctx.parameters()["scenario"] = scenario.resolved;
  if (command == "prepare") return cmd_prepare(ctx);
  if (command == "beat") return cmd_beat(ctx, false);
  if (command == "spectrum") return cmd_beat(ctx, true);
  if (command == "propagate") return cmd_propagate(ctx);
  if (command == "cascade") return cmd_cascade(ctx);
  throw ValidationError("command", "unknown command '" + command + "'");
}

SweepAxis parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw ValidationError("--axis", "expected path=v1,v2,... or path=start:stop:count");
  SweepAxis a;
  a.path = spec.substr(0, eq);
  const std::string rest = spec.substr(eq + 1);
  auto number = [&](const std::string& t) {
    try {
      std::size_t used = 0;
      const double v = std::stod(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw ValidationError("--axis", "not a number: '" + t + "'");
    }
  };
  if (rest.find(':') != std::string::npos) {
    const auto c1 = rest.find(':'), c2 = rest.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ValidationError("--axis", "range must be start:stop:count");
    const double lo = number(rest.substr(0, c1)), hi = number(rest.substr(c1 + 1, c2 - c1 - 1));
    const double cnt = number(rest.substr(c2 + 1));
    if (cnt < 1 || cnt != std::floor(cnt)) throw ValidationError("--axis", "count must be a positive integer");
    const auto n = static_cast<std::size_t>(cnt);
    for (std::size_t i = 0; i < n; ++i) a.values.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  } else {
    std::size_t start = 0;
    while (start <= rest.size()) {
      const auto comma = rest.find(',', start);
      const std::string t = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (t.empty()) throw ValidationError("--axis", "empty value");
      a.values.push_back(number(t));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (a.values.empty()) throw ValidationError("--axis", "no values");
  return a;
}

std::size_t default_threads() {
  if (const char* env = std::getenv("RAMAN_BEAT_THREADS"); env && *env) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepOutcome run_sweep(const json& base, const std::filesystem::path& base_dir, const std::string& command,
                       const SweepAxis& axis, const RunOptions& options, std::size_t threads) {
  // validate every point before running any
  std::vector<Scenario> points;
  for (std::size_t i = 0; i < axis.values.size(); ++i) {
    json j = base;
    set_path(j, axis.path, axis.values[i]);
    try {
      points.push_back(build_scenario(j, base_dir));
    } catch (const ValidationError& e) {
      throw ValidationError(e.path(), std::string(e.what()) + " (sweep point " + std::to_string(i) + ")");
    }
  }

  SweepOutcome outcome;
  outcome.rows.resize(points.size());
  std::atomic<std::size_t> next{0};
  RunOptions point_opts = options;
  point_opts.write_files = false;
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      json row = {{"index", i}, {"value", axis.values[i]}};
      try {
        row["record"] = run_scenario(command, points[i], point_opts).to_json();
        row["ok"] = true;
      } catch (const std::exception& e) {
        row["ok"] = false;
        row["error"] = e.what();
      }
      outcome.rows[i] = std::move(row);
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(threads, points.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t + 1 < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& r : outcome.rows)
    if (!r.at("ok").get<bool>()) ++outcome.failures;

  if (options.write_files) {
    std::filesystem::create_directories(options.out_dir);
    // union of scalar metric columns, sorted for a stable layout
    std::set<std::string> keys;
    std::vector<json> flat(outcome.rows.size());
    for (std::size_t i = 0; i < outcome.rows.size(); ++i) {
      if (outcome.rows[i]["ok"].get<bool>()) flat[i] = flatten(outcome.rows[i]["record"]["metrics"]);
      else flat[i] = json::object();
      for (const auto& [k, v] : flat[i].items()) keys.insert(k);
    }
    std::ofstream csv(options.out_dir / "sweep.csv", std::ios::binary);
    csv << "index," << axis.path << ",ok";
    for (const auto& k : keys) csv << ',' << k;
    csv << '\n';
    for (std::size_t i = 0; i < outcome.rows.size(); ++i) {
      csv << i << ',' << fmt(axis.values[i].get<double>()) << ',' << (outcome.rows[i]["ok"].get<bool>() ? 1 : 0);
      for (const auto& k : keys) {
        csv << ',';
        if (!flat[i].contains(k)) continue;
        const auto& v = flat[i][k];
        if (v.is_boolean()) csv << (v.get<bool>() ? 1 : 0);
        else csv << fmt(v.get<double>());
      }
      csv << '\n';
    }
    std::ofstream js(options.out_dir / "sweep.json", std::ios::binary);
    js << json({{"axis", axis.path}, {"command", command}, {"points", outcome.rows}}).dump(2) << '\n';
  }
  return outcome;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Raman beat propagation: molecular modulation of probe pulses", "raman-beat"};
  app.require_subcommand(1);
  std::string config, preset, format = "csv", out_dir = ".";
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  bool list = false;
  app.add_option("--config", config, "scenario JSON file");
  app.add_option("--preset", preset, "named preset scenario");
  app.add_option("--out-dir", out_dir, "output directory");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--set", sets, "override a scenario value: path=value")->allow_extra_args(false);
  app.add_option("--seed", seed, "accepted for reproducibility records; runs are deterministic");
  app.add_flag("--list-presets", list, "print the preset names and exit");

  std::string scheme, axis;
  std::size_t threads = 0;
  std::string sweep_command = "beat";
  for (const char* name : {"prepare", "beat", "propagate", "cascade", "spectrum"}) {
    auto* sub = app.add_subcommand(name);
    if (std::string(name) == "propagate") sub->add_option("--scheme", scheme, "override run.scheme");
  }
  auto* sweep = app.add_subcommand("sweep", "run a command over one scenario axis");
  sweep->add_option("--axis", axis, "path=v1,v2,... or path=start:stop:count")->required();
  sweep->add_option("--command", sweep_command, "command to sweep")
      ->check(CLI::IsMember({"prepare", "beat", "propagate", "cascade", "spectrum"}));
  sweep->add_option("--threads", threads, "worker threads (default RAMAN_BEAT_THREADS or all cores)");

  // --list-presets works without a subcommand
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--list-presets") {
      for (const auto& n : preset_names()) out << n << '\n';
      return 0;
    }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (config.empty() == preset.empty()) throw ValidationError("--config", "give exactly one of --config and --preset");
    json source;
    std::filesystem::path base;
    if (!config.empty()) {
      source = read_json_file(config);
      base = std::filesystem::path(config).parent_path();
    } else {
      source = load_preset(preset);
      base = preset_dir();
    }
    for (const auto& a : sets) apply_override(source, a);
    if (!scheme.empty()) set_path(source, "run.scheme", scheme);

    RunOptions opts;
    opts.out_dir = out_dir;
    opts.format = format == "json" ? Format::Json : Format::Csv;
    opts.seed = seed;
    auto* sub = app.get_subcommands().front();
    if (sub == sweep) {
      const auto ax = parse_axis(axis);
      const auto result = run_sweep(source, base, sweep_command, ax, opts, threads ? threads : default_threads());
      out << "sweep " << ax.path << ": " << result.rows.size() - result.failures << "/" << result.rows.size()
          << " points succeeded\n";
      for (const auto& r : result.rows)
        if (!r.at("ok").get<bool>()) err << "point " << r.at("index") << ": " << r.at("error").get<std::string>() << '\n';
      return result.failures ? 2 : 0;
    }
    const auto scenario = build_scenario(source, base);
    const auto rec = run_scenario(sub->get_name(), scenario, opts);
    out << rec.command << " " << rec.name << " [" << rec.hash << "]\n" << rec.metrics.dump(2) << '\n';
    return 0;
  } catch (const ValidationError& e) {
    err << "invalid scenario: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace ramanbeat::cli
