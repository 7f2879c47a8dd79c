#include "ramanbeat/cli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "ramanbeat/medium/state.hpp"

#ifndef RAMANBEAT_PRESET_DIR
#define RAMANBEAT_PRESET_DIR "presets"
#endif

namespace ramanbeat::cli {

namespace {

constexpr double kDebye = 3.33564e-30;  // C m

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Typed access to one JSON object with path-qualified errors.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ValidationError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  const std::string& path() const { return path_; }
  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }
  std::string at(const std::string& key) const { return join(path_, key); }

  void allow(std::initializer_list<const char*> keys) const {
    const std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : j_.items())
      if (!ok.contains(k)) throw ValidationError(at(k), "unknown key");
  }

  Node child(const std::string& key) const { return Node(j_.at(key), at(key)); }
  const json& raw(const std::string& key) const { return j_.at(key); }

  double number(const std::string& key) const {
    const auto& v = j_.at(key);
    if (!v.is_number()) throw ValidationError(at(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ValidationError(at(key), "must be finite");
    return x;
  }
  double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }
  double positive(const std::string& key) const {
    const double x = number(key);
    if (!(x > 0.0)) throw ValidationError(at(key), "must be positive");
    return x;
  }
  double positive(const std::string& key, double fallback) const { return has(key) ? positive(key) : fallback; }
  double non_negative(const std::string& key, double fallback) const {
    const double x = number(key, fallback);
    if (x < 0.0) throw ValidationError(at(key), "must be non-negative");
    return x;
  }
  long integer(const std::string& key) const {
    const auto& v = j_.at(key);
    if (!v.is_number_integer()) throw ValidationError(at(key), "expected an integer");
    return v.get<long>();
  }
  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_boolean()) throw ValidationError(at(key), "expected true or false");
    return j_.at(key).get<bool>();
  }
  std::string string(const std::string& key) const {
    if (!j_.at(key).is_string()) throw ValidationError(at(key), "expected a string");
    return j_.at(key).get<std::string>();
  }
  std::array<double, 3> triple(const std::string& key) const {
    const auto& v = j_.at(key);
    if (!v.is_array() || v.size() != 3) throw ValidationError(at(key), "expected [value, first, second derivative]");
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!v[i].is_number()) throw ValidationError(at(key) + "[" + std::to_string(i) + "]", "expected a number");
      out[i] = v[i].get<double>();
    }
    return out;
  }
  std::pair<int, int> range(const std::string& key, std::pair<int, int> fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
      throw ValidationError(at(key), "expected [lowest, highest] order");
    const int lo = v[0].get<int>(), hi = v[1].get<int>();
    if (hi < lo) throw ValidationError(at(key), "highest order below lowest");
    return {lo, hi};
  }

  // Exactly one (or, if optional, at most one) of the keys; returns its name.
  std::string one_of(std::initializer_list<const char*> keys, bool required = true) const {
    std::string found;
    for (const char* k : keys) {
      if (!has(k)) continue;
      if (!found.empty()) throw ValidationError(at(k), "conflicts with " + at(found));
      found = k;
    }
    if (found.empty() && required) {
      std::string names;
      for (const char* k : keys) names += (names.empty() ? "" : ", ") + std::string(k);
      throw ValidationError(path_.empty() ? "<root>" : path_, "needs exactly one of " + names);
    }
    return found;
  }

 private:
  const json& j_;
  std::string path_;
};

Frequency frequency_from(const Node& n, const std::string& stem, double omega_m, bool required = true) {
  const std::string key = n.one_of({(stem + "_nm").c_str(), (stem + "_cm").c_str(), (stem + "_rad_s").c_str(),
                                    (stem + "_over_omega_m").c_str()},
                                   required);
  if (key.empty()) return {};
  const double v = n.positive(key);
  if (key.ends_with("_nm")) return Frequency::from_wavelength_nm(v);
  if (key.ends_with("_cm")) return Frequency::from_wavenumber_cm(v);
  if (key.ends_with("_rad_s")) return Frequency::from_rad_per_s(v);
  return Frequency::from_rad_per_s(v * omega_m);
}

MediumParameters read_medium(const Node& n, const std::filesystem::path& base) {
  n.allow({"model", "density_cm3", "omega_m_cm", "reference_nm", "a", "b", "d", "levels_csv", "dispersionless"});
  std::optional<MediumParameters> m;
  if (n.has("model")) {
    if (n.string("model") != "solid_h2") throw ValidationError(n.at("model"), "unknown model (known: solid_h2)");
    m = MediumParameters::solid_h2();
  }
  const double density = n.has("density_cm3") ? n.positive("density_cm3") * 1e6 : (m ? m->density() : 0.0);
  const Frequency wm = n.has("omega_m_cm") ? Frequency::from_wavenumber_cm(n.positive("omega_m_cm"))
                                           : (m ? m->omega_m() : Frequency{});
  const Frequency ref = n.has("reference_nm") ? Frequency::from_wavelength_nm(n.positive("reference_nm"))
                                              : (m ? m->reference() : Frequency::from_wavelength_nm(800.0));
  if (!(density > 0.0)) throw ValidationError(n.at("density_cm3"), "required (or set model)");
  if (!(wm.value() > 0.0)) throw ValidationError(n.at("omega_m_cm"), "required (or set model)");

  if (n.has("levels_csv")) {
    for (const char* k : {"a", "b", "d", "model"})
      if (n.has(k)) throw ValidationError(n.at(k), "conflicts with " + n.at("levels_csv"));
    std::filesystem::path p = n.string("levels_csv");
    if (p.is_relative()) p = base / p;
    if (!std::filesystem::exists(p)) throw ValidationError(n.at("levels_csv"), "file not found: " + p.string());
    try {
      return MediumParameters(density, wm, ref, read_level_table(p));
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception& e) {
      throw ValidationError(n.at("levels_csv"), e.what());
    }
  }
  std::array<double, 3> a{}, b{}, d{};
  if (m) a = m->a(), b = m->b(), d = m->d();
  for (const auto& [key, dst] : {std::pair{"a", &a}, std::pair{"b", &b}, std::pair{"d", &d}}) {
    if (n.has(key)) *dst = n.triple(key);
    else if (!m) throw ValidationError(n.at(key), "required (or set model)");
  }
  try {
    MediumParameters out(density, wm, ref, a, b, d);
    return n.boolean("dispersionless", false) ? out.dispersionless() : out;
  } catch (const std::exception& e) {
    throw ValidationError(n.path(), e.what());
  }
}

WidthConvention read_convention(const Node& n) {
  if (!n.has("width_convention")) return WidthConvention::IntensityFwhm;
  const auto s = n.string("width_convention");
  if (s == "intensity_fwhm") return WidthConvention::IntensityFwhm;
  if (s == "field_fwhm") return WidthConvention::FieldFwhm;
  if (s == "field_half_width_1e") return WidthConvention::FieldHalfWidth1e;
  throw ValidationError(n.at("width_convention"), "expected intensity_fwhm, field_fwhm or field_half_width_1e");
}

ProbeSpec read_probe(const Node& n, double wm) {
  n.allow({"amplitude_V_m", "carrier_nm", "carrier_cm", "carrier_rad_s", "carrier_over_omega_m", "width_fs",
           "width_over_Tm", "peak_time_fs", "peak_eta_over_Tm", "width_convention"});
  const double tm = 2 * std::numbers::pi / wm;
  ProbeSpec p;
  p.amplitude = n.positive("amplitude_V_m", 1.0);
  p.carrier = frequency_from(n, "carrier", wm);
  const auto wkey = n.one_of({"width_fs", "width_over_Tm"});
  p.width = wkey == "width_fs" ? n.positive(wkey) * 1e-15 : n.positive(wkey) * tm;
  p.convention = read_convention(n);
  const auto pkey = n.one_of({"peak_time_fs", "peak_eta_over_Tm"}, false);
  if (pkey == "peak_eta_over_Tm") {
    p.peak = n.number(pkey) * tm;
    p.peak_in_eta = true;
  } else if (!pkey.empty()) {
    p.peak = n.number(pkey) * 1e-15;
  }
  return p;
}

TimeGrid read_grid(const Node& n, double wm) {
  n.allow({"points", "span_over_Tm", "span_fs", "dt_fs"});
  const long pts = n.integer("points");
  if (pts < 16 || (pts & (pts - 1)) != 0) throw ValidationError(n.at("points"), "must be a power of two >= 16");
  const auto key = n.one_of({"span_over_Tm", "span_fs", "dt_fs"});
  const double tm = 2 * std::numbers::pi / wm;
  double dt = 0;
  if (key == "span_over_Tm") dt = n.positive(key) * tm / static_cast<double>(pts);
  else if (key == "span_fs") dt = n.positive(key) * 1e-15 / static_cast<double>(pts);
  else dt = n.positive(key) * 1e-15;
  return TimeGrid::centered(static_cast<std::size_t>(pts), dt);
}

DriveSpec read_drive(const Node& n, Frequency wm) {
  n.allow({"upper_nm", "upper_cm", "upper_rad_s", "lower_nm", "lower_cm", "lower_rad_s", "intensity_W_cm2",
           "width_ns", "peak_time_ns", "detuning_MHz", "gamma1_per_s", "gamma2_per_s", "tau_span_ns",
           "tau_points", "rel_tol", "abs_tol"});
  DriveSpec d;
  d.upper = frequency_from(n, "upper", wm.value());
  d.lower = Frequency::from_rad_per_s(d.upper.value() - wm.value());
  const Frequency given = frequency_from(n, "lower", wm.value(), false);
  if (given.value() > 0.0) {
    // quoted wavenumbers are rounded; accept them within 1 cm^-1 of upper - omega_m
    if (std::abs(given.value() - d.lower.value()) > Frequency::from_wavenumber_cm(1.0).value())
      throw ValidationError(n.path() + ".lower", "must lie one Raman frequency below the upper drive");
  }
  d.intensity = n.positive("intensity_W_cm2") * 1e4;
  d.width = n.positive("width_ns") * 1e-9;
  d.peak_time = n.number("peak_time_ns", 0.0) * 1e-9;
  d.dynamics.delta = 2 * std::numbers::pi * n.number("detuning_MHz", 0.0) * 1e6;
  d.dynamics.gamma1 = n.non_negative("gamma1_per_s", 0.0);
  d.dynamics.gamma2 = n.non_negative("gamma2_per_s", 0.0);
  const double span = n.positive("tau_span_ns", 4 * d.width * 1e9) * 1e-9;
  long pts = 201;
  if (n.has("tau_points")) {
    pts = n.integer("tau_points");
    if (pts < 3) throw ValidationError(n.at("tau_points"), "must be at least 3");
  }
  d.tau = TimeGrid(d.peak_time - span / 2, span / static_cast<double>(pts - 1), static_cast<std::size_t>(pts));
  d.rel_tol = n.positive("rel_tol", 1e-8);
  d.abs_tol = n.positive("abs_tol", 1e-10);
  return d;
}

void read_run(const Node& n, Scenario& s) {
  n.allow({"scheme", "dz_um", "adaptive", "rel_tol", "stability_limit", "safety", "terms", "sidebands", "decimation",
           "compare_dispersionless", "comb", "comb_overflow"});
  auto& r = s.run;
  if (n.has("scheme")) {
    try {
      r.scheme = parse_scheme(n.string("scheme"));
    } catch (const std::invalid_argument& e) {
      throw ValidationError(n.at("scheme"), e.what());
    }
  }
  r.dz = n.non_negative("dz_um", 0.0) * 1e-6;
  r.adaptive = n.boolean("adaptive", false);
  r.rel_tol = n.positive("rel_tol", r.rel_tol);
  r.stability_limit = n.positive("stability_limit", r.stability_limit);
  r.safety = n.positive("safety", r.safety);
  if (r.safety > 1.0) throw ValidationError(n.at("safety"), "must not exceed 1");
  if (n.has("terms")) {
    const auto t = n.child("terms");
    t.allow({"phase", "group_velocity", "dispersion", "coupling", "coupling_group", "coupling_dispersion"});
    r.terms.phase = t.boolean("phase", true);
    r.terms.group_velocity = t.boolean("group_velocity", true);
    r.terms.dispersion = t.boolean("dispersion", true);
    r.terms.coupling = t.boolean("coupling", true);
    r.terms.coupling_group = t.boolean("coupling_group", true);
    r.terms.coupling_dispersion = t.boolean("coupling_dispersion", true);
  }
  std::tie(s.sideband_min, s.sideband_max) = n.range("sidebands", {s.sideband_min, s.sideband_max});
  if (n.has("decimation")) {
    const long d = n.integer("decimation");
    if (d < 1) throw ValidationError(n.at("decimation"), "must be at least 1");
    s.decimation = static_cast<std::size_t>(d);
  }
  s.compare_dispersionless = n.boolean("compare_dispersionless", false);
  std::tie(r.comb_q_min, r.comb_q_max) = n.range("comb", {r.comb_q_min, r.comb_q_max});
  r.comb_overflow = n.positive("comb_overflow", r.comb_overflow);
}

const std::set<std::string> kCommands{"prepare", "beat", "propagate", "cascade", "spectrum"};
const std::set<std::string> kOutputs{"field", "spectrum", "sidebands", "gain", "coherence", "comb", "probe"};

}  // namespace

double DriveSpec::amplitude() const { return std::sqrt(2.0 * intensity / (constants::c * constants::epsilon0)); }

DriveConfig DriveSpec::config(Frequency omega_m) const {
  const double amp = amplitude();
  const double sigma = gaussian_sigma(width, WidthConvention::IntensityFwhm);
  const double t0 = peak_time;
  Envelope env = [=](double t) { return std::complex<double>(amp * std::exp(-(t - t0) * (t - t0) / (2 * sigma * sigma))); };
  return DriveConfig({upper, env}, {lower, env}, omega_m, dynamics);
}

bool Scenario::wants(const std::string& output) const {
  return outputs.empty() || std::find(outputs.begin(), outputs.end(), output) != outputs.end();
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path.string(), "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string(), std::string("invalid JSON: ") + e.what());
  }
}

std::filesystem::path preset_dir() {
  if (const char* env = std::getenv("RAMAN_BEAT_PRESET_DIR"); env && *env) return env;
  return RAMANBEAT_PRESET_DIR;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(preset_dir(), ec))
    if (e.path().extension() == ".json") names.push_back(e.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

json load_preset(const std::string& name) {
  const auto p = preset_dir() / (name + ".json");
  if (!std::filesystem::exists(p)) {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ValidationError("--preset", "unknown preset '" + name + "' (known: " + known + ")");
  }
  return read_json_file(p);
}

void set_path(json& scenario, const std::string& path, const json& value) {
  if (path.empty()) throw ValidationError("--set", "empty path");
  json* node = &scenario;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw ValidationError(path, "empty path component");
    if (!node->is_object()) {
      if (!node->is_null()) throw ValidationError(path, "'" + key + "' is below a non-object value");
      *node = json::object();
    }
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

void apply_override(json& scenario, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ValidationError(assignment, "override must look like path=value");
  const std::string path = assignment.substr(0, eq), text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  set_path(scenario, path, value);
}

LevelTable read_level_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path.string(), "cannot open level table");
  auto split = [](const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t\r"), e = cell.find_last_not_of(" \t\r");
      out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    return out;
  };
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(path.string(), "empty level table");
  const auto header = split(line);
  struct Column {
    int index = -1;
    double scale = 1.0;
  };
  Column da, db, ma, mb;
  const double per_cm = Frequency::from_wavenumber_cm(1.0).value();
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto& h = header[i];
    const int idx = static_cast<int>(i);
    if (h == "detuning_a_cm") da = {idx, per_cm};
    else if (h == "detuning_a_rad_s") da = {idx, 1.0};
    else if (h == "detuning_b_cm") db = {idx, per_cm};
    else if (h == "detuning_b_rad_s") db = {idx, 1.0};
    else if (h == "mu_a_Cm") ma = {idx, 1.0};
    else if (h == "mu_a_debye") ma = {idx, kDebye};
    else if (h == "mu_b_Cm") mb = {idx, 1.0};
    else if (h == "mu_b_debye") mb = {idx, kDebye};
    else throw ValidationError(path.string() + ":1", "unknown column '" + h + "'");
  }
  for (const auto& [c, name] : {std::pair{da, "detuning_a"}, std::pair{db, "detuning_b"}, std::pair{ma, "mu_a"},
                                std::pair{mb, "mu_b"}})
    if (c.index < 0) throw ValidationError(path.string() + ":1", std::string("missing column ") + name);

  std::vector<Level> levels;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    const std::string where = path.string() + ":" + std::to_string(row);
    if (cells.size() != header.size()) throw ValidationError(where, "expected " + std::to_string(header.size()) + " cells");
    auto cell = [&](const Column& c) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cells[static_cast<std::size_t>(c.index)], &used);
        if (used != cells[static_cast<std::size_t>(c.index)].size()) throw std::invalid_argument("trailing text");
        return v * c.scale;
      } catch (const std::exception&) {
        throw ValidationError(where, "not a number: '" + cells[static_cast<std::size_t>(c.index)] + "'");
      }
    };
    levels.push_back({cell(da), cell(db), cell(ma), cell(mb)});
  }
  if (levels.empty()) throw ValidationError(path.string(), "no levels");
  try {
    return LevelTable(std::move(levels));
  } catch (const std::exception& e) {
    throw ValidationError(path.string(), e.what());
  }
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string scenario_hash(const json& resolved) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(resolved.dump())));
  return buf;
}

Scenario build_scenario(const json& source, const std::filesystem::path& base_dir) {
  const Node root(source, "");
  root.allow({"name", "command", "medium", "preparation", "length", "probe", "grid", "run", "drive", "outputs", "notes"});
  Scenario s;
  s.resolved = source;
  s.name = root.has("name") ? root.string("name") : "scenario";
  if (root.has("command")) {
    s.command = root.string("command");
    if (!kCommands.contains(s.command)) throw ValidationError("command", "unknown command '" + s.command + "'");
  }

  if (root.has("medium")) s.medium = read_medium(root.child("medium"), base_dir);
  const double wm = s.medium.omega_m().value();

  if (root.has("drive")) s.drive = read_drive(root.child("drive"), s.medium.omega_m());

  if (root.has("preparation")) {
    const auto p = root.child("preparation");
    p.allow({"direct", "adiabatic"});
    const auto mode = p.one_of({"direct", "adiabatic"});
    if (mode == "direct") {
      const auto d = p.child("direct");
      d.allow({"theta_rad", "phi0_rad"});
      const double theta = d.number("theta_rad"), phi0 = d.number("phi0_rad", 0.0);
      const PreparedCoherence c(theta, phi0, 0.0);
      s.direct = c.with_kappa(kappa_of(s.medium, c.state_at(0)));
    } else {
      p.child("adiabatic").allow({});
      if (!s.drive) throw ValidationError("preparation.adiabatic", "needs a drive section");
      s.adiabatic = true;
    }
  }

  if (root.has("length")) {
    const auto l = root.child("length");
    l.allow({"z_um", "alpha_z"});
    const auto key = l.one_of({"z_um", "alpha_z"});
    if (key == "z_um") s.z = l.positive("z_um") * 1e-6;
    else {
      s.alpha_z = l.number("alpha_z");
      if (*s.alpha_z < 0.0) throw ValidationError(l.at("alpha_z"), "must be non-negative");
    }
  }

  if (root.has("probe")) s.probe = read_probe(root.child("probe"), wm);
  s.grid = root.has("grid") ? read_grid(root.child("grid"), wm) : TimeGrid::centered(4096, 32 * 2 * std::numbers::pi / wm / 4096);
  if (root.has("run")) read_run(root.child("run"), s);
  if (s.z) s.run.z_end = *s.z;
  if (s.run.dz > 0.0 && s.z && s.run.dz > *s.z) throw ValidationError("run.dz_um", "larger than the medium length");
  try {
    validate(s.run);
  } catch (const std::invalid_argument& e) {
    throw ValidationError("run", e.what());
  }

  if (root.has("outputs")) {
    const auto& o = root.raw("outputs");
    if (!o.is_array()) throw ValidationError("outputs", "expected an array of names");
    for (std::size_t i = 0; i < o.size(); ++i) {
      const std::string where = "outputs[" + std::to_string(i) + "]";
      if (!o[i].is_string()) throw ValidationError(where, "expected a string");
      const auto name = o[i].get<std::string>();
      if (!kOutputs.contains(name)) throw ValidationError(where, "unknown output '" + name + "'");
      s.outputs.push_back(name);
    }
  }
  if (s.probe && s.probe->carrier.value() >= s.grid.nyquist())
    throw ValidationError("grid", "time step does not resolve the probe carrier");
  return s;
}

}  // namespace ramanbeat::cli
