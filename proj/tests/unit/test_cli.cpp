#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ramanbeat/cli/runner.hpp"

using namespace ramanbeat;
using namespace ramanbeat::cli;

namespace {

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() / ("ramanbeat_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_path(const json& j) {
  try {
    build_scenario(j);
  } catch (const ValidationError& e) {
    return e.path();
  }
  return "";
}

int invoke(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "raman-beat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return rc;
}

RunOptions quiet() {
  RunOptions o;
  o.write_files = false;
  return o;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("presets carry the printed solid hydrogen constants") {
    const auto names = preset_names();
    for (const char* n : {"fig2", "fig3a", "fig3b", "fig3c", "fig3d", "fig4", "fig5", "fig6"})
      CHECK(std::find(names.begin(), names.end(), n) != names.end());
    for (const auto& n : names) {
      CAPTURE(n);
      const auto s = build_scenario(load_preset(n), preset_dir());
      CHECK(s.medium.density() == doctest::Approx(2.6e28).epsilon(1e-12));
      CHECK(s.medium.omega_m().wavenumber_cm() == doctest::Approx(4149.7).epsilon(1e-12));
      CHECK(s.medium.a() == std::array<double, 3>{2.42e-7, 3.13e-24, 1.41e-39});
      CHECK(s.medium.b() == std::array<double, 3>{2.63e-7, 3.81e-24, 1.73e-39});
      CHECK(s.medium.d() == std::array<double, 3>{5.50e-8, 1.25e-24, 5.07e-40});
    }
  }

  TEST_CASE("validation reports the offending path") {
    const json base = load_preset("fig4");
    auto with = [&](const std::string& assignment) {
      json j = base;
      apply_override(j, assignment);
      return error_path(j);
    };
    CHECK(error_path(base).empty());
    CHECK(with("probe.colour=1") == "probe.colour");
    CHECK(with("probe.width_fs=-3") == "probe.width_fs");
    CHECK(with("grid.points=1000") == "grid.points");
    CHECK(with("run.scheme=\"leapfrog\"") == "run.scheme");
    CHECK(with("run.safety=2") == "run.safety");
    CHECK(with("medium.model=\"glass\"") == "medium.model");
    CHECK(with("outputs=[\"field\",\"movie\"]") == "outputs[1]");
    CHECK(with("command=\"plot\"") == "command");
    CHECK(with("medium.levels_csv=\"levels.csv\"") == "medium.a");  // coefficients and a table
    CHECK(with("medium={\"density_cm3\":2.6e22,\"omega_m_cm\":4149.7,\"levels_csv\":\"missing.csv\"}") ==
          "medium.levels_csv");
    CHECK(with("preparation.adiabatic={}") == "preparation.adiabatic");  // two modes given
    CHECK(with("length.alpha_z=1") == "length.alpha_z");                // z_um and alpha_z
    CHECK(with("grid.points=16") == "grid");                    // carrier above Nyquist

    json j = base;
    j["preparation"] = {{"adiabatic", json::object()}};
    CHECK(error_path(j) == "preparation.adiabatic");  // no drive

    json d = load_preset("fig6");
    d["drive"]["lower_cm"] = 24100;
    CHECK(error_path(d) == "drive.lower");
    d["drive"]["lower_cm"] = 24019;
    CHECK(error_path(d).empty());
    d["drive"]["tau_points"] = 2;
    CHECK(error_path(d) == "drive.tau_points");
  }

  TEST_CASE("a quoted lower drive is snapped one Raman frequency below the upper drive") {
    const auto s = build_scenario(load_preset("fig6"));
    REQUIRE(s.drive.has_value());
    CHECK(s.drive->upper.value() - s.drive->lower.value() == doctest::Approx(s.medium.omega_m().value()).epsilon(1e-14));
    CHECK(s.drive->lower.wavenumber_cm() == doctest::Approx(24019).epsilon(1e-4));
    // sqrt(2 I / (c eps0)) at 1e9 W/cm^2
    CHECK(s.drive->amplitude() == doctest::Approx(std::sqrt(2 * 1e13 / (299792458.0 * 8.8541878128e-12))).epsilon(1e-9));
  }

  TEST_CASE("overrides parse JSON values and create nested objects") {
    json j = json::object();
    apply_override(j, "a.b.c=2.5");
    apply_override(j, "a.name=fig");
    apply_override(j, "a.flag=true");
    apply_override(j, "a.list=[1,2]");
    CHECK(j["a"]["b"]["c"] == 2.5);
    CHECK(j["a"]["name"] == "fig");
    CHECK(j["a"]["flag"] == true);
    CHECK(j["a"]["list"].size() == 2);
    CHECK_THROWS_AS(apply_override(j, "novalue"), ValidationError);
    CHECK_THROWS_AS(apply_override(j, "a.name.x=1"), ValidationError);
    CHECK_THROWS_AS(apply_override(j, "a..b=1"), ValidationError);
  }

  TEST_CASE("scenario hash identifies the resolved scenario") {
    const json a = load_preset("fig3c");
    json b = a;
    CHECK(scenario_hash(a) == scenario_hash(b));
    CHECK(scenario_hash(a).size() == 16);
    apply_override(b, "length.alpha_z=0.81");
    CHECK(scenario_hash(a) != scenario_hash(b));
    // FNV-1a reference values
    CHECK(fnv1a("") == 14695981039346656037ull);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  }

  TEST_CASE("level table files") {
    TempDir dir("levels");
    {
      std::ofstream f(dir.path / "levels.csv");
      f << "detuning_a_cm, detuning_b_cm, mu_a_debye, mu_b_debye\n";
      f << "90000, 85850.3, 1.0, 0.8\n\n";
      f << "100000, 95850.3, 0.5, 0.6\n";
    }
    const auto t = read_level_table(dir.path / "levels.csv");
    REQUIRE(t.size() == 2);
    const double per_cm = 2 * 3.141592653589793 * 299792458.0 * 100;
    CHECK(t.levels()[0].detuning_a == doctest::Approx(90000 * per_cm).epsilon(1e-12));
    CHECK(t.levels()[1].mu_b == doctest::Approx(0.6 * 3.33564095e-30).epsilon(1e-6));

    json j = load_preset("fig4");
    j["medium"] = {{"density_cm3", 2.6e22}, {"omega_m_cm", 4149.7}, {"levels_csv", "levels.csv"}};
    const auto s = build_scenario(j, dir.path);
    CHECK(s.medium.levels().has_value());

    {
      std::ofstream f(dir.path / "bad.csv");
      f << "detuning_a_cm,detuning_b_cm,mu_a_debye\n1,2,3\n";
    }
    CHECK_THROWS_AS(read_level_table(dir.path / "bad.csv"), ValidationError);
    {
      std::ofstream f(dir.path / "bad2.csv");
      f << "detuning_a_cm,detuning_b_cm,mu_a_debye,mu_b_debye\n1,2,x,3\n";
    }
    try {
      read_level_table(dir.path / "bad2.csv");
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      CHECK(e.path().ends_with("bad2.csv:2"));
    }
  }

  TEST_CASE("fig2 beat produces the pulse train and sideband comb") {
    TempDir dir("fig2");
    RunOptions o;
    o.out_dir = dir.path;
    const auto rec = run_scenario("beat", build_scenario(load_preset("fig2")), o);
    const double tm = 2 * 3.141592653589793 / Frequency::from_wavenumber_cm(4149.7).value();
    CHECK(rec.metrics["alpha_z"] == 0.6);
    REQUIRE(rec.metrics["pulse"]["train_period_s"].is_number());
    CHECK(rec.metrics["pulse"]["train_period_s"].get<double>() == doctest::Approx(tm).epsilon(0.02));
    CHECK(rec.metrics["pulse"]["peak_amplitude_V_m"].get<double>() == doctest::Approx(std::exp(0.6)).epsilon(0.01));
    CHECK(rec.metrics["spectrum"]["q_antistokes"].get<int>() >= 4);
    for (const char* f : {"field.csv", "gain.csv", "spectrum.csv", "sidebands.csv", "record.json"})
      CHECK(std::filesystem::exists(dir.path / f));
    const auto header = slurp(dir.path / "field.csv").substr(0, 40);
    CHECK(header.starts_with("eta_over_Tm,tau_fs,E_in_V_m"));
    const auto record = json::parse(slurp(dir.path / "record.json"));
    CHECK(record["scenario_hash"] == rec.hash);
    CHECK(record["version"] == RAMANBEAT_VERSION);
  }

  TEST_CASE("fig3 at eta_p = T_m/2 gives a single compressed pulse") {
    const auto rec = run_scenario("beat", build_scenario(load_preset("fig3c")), quiet());
    CHECK(rec.metrics["pulse"]["subpulses"] == 1);
    CHECK(rec.metrics["pulse"]["compression_factor"].get<double>() > 1.5);
    const auto st = run_scenario("beat", build_scenario(load_preset("fig3a")), quiet());
    CHECK(st.metrics["pulse"]["compression_factor"].get<double>() < 0.7);
  }

  TEST_CASE("an empty probe gives zero fields and succeeds") {
    TempDir dir("empty");
    RunOptions o;
    o.out_dir = dir.path;
    for (const char* preset : {"fig2", "fig4"}) {
      json j = load_preset(preset);
      j.erase("probe");
      const auto s = build_scenario(j);
      const auto rec = run_scenario(s.command, s, o);
      CHECK(rec.metrics["empty_probe"] == true);
      std::istringstream csv(slurp(dir.path / "field.csv"));
      std::string line;
      std::getline(csv, line);
      std::size_t rows = 0;
      bool zero = true;
      while (std::getline(csv, line)) {
        ++rows;
        std::istringstream cells(line);
        std::string cell;
        int col = 0;
        while (std::getline(cells, cell, ','))
          if (col++ >= 2 && std::stod(cell) != 0.0) zero = false;
      }
      CHECK(rows == s.grid.size());
      CHECK(zero);
    }
  }

  TEST_CASE("length sweep on fig4 reproduces the printed alpha z values") {
    TempDir dir("sweep");
    RunOptions o;
    o.out_dir = dir.path;
    const auto axis = parse_axis("length.z_um=20,30,40,50");
    const auto r = run_sweep(load_preset("fig4"), preset_dir(), "prepare", axis, o, 3);
    REQUIRE(r.failures == 0);
    REQUIRE(r.rows.size() == 4);
    const double az[] = {0.64, 0.95, 1.27, 1.59}, gain[] = {1.89, 2.60, 3.57, 4.91};
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& m = r.rows[i]["record"]["metrics"];
      CHECK(r.rows[i]["index"] == i);
      CHECK(std::abs(m["alpha_z"].get<double>() - az[i]) <= 0.02);
      CHECK(std::abs(m["exp_alpha_z"].get<double>() - gain[i]) <= 0.02);
    }
    const auto csv = slurp(dir.path / "sweep.csv");
    CHECK(csv.starts_with("index,length.z_um,ok,"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK(json::parse(slurp(dir.path / "sweep.json"))["points"].size() == 4);
  }

  TEST_CASE("a timing sweep alternates between stretching and compression") {
    const auto axis = parse_axis("probe.peak_eta_over_Tm=0:1:5");
    REQUIRE(axis.values.size() == 5);
    CHECK(axis.values[2] == 0.5);
    const auto r = run_sweep(load_preset("fig3a"), {}, "beat", axis, quiet(), 2);
    REQUIRE(r.failures == 0);
    std::vector<double> c;
    for (const auto& row : r.rows) c.push_back(row["record"]["metrics"]["pulse"]["compression_factor"].get<double>());
    CHECK(c[0] < 1.0);
    CHECK(c[2] > 1.0);
    CHECK(c[4] < 1.0);
    CHECK(c[2] > c[1]);
    CHECK(c[2] > c[3]);
  }

  TEST_CASE("a single-point sweep equals a direct run") {
    const json base = load_preset("fig3c");
    const auto r = run_sweep(base, {}, "beat", parse_axis("length.alpha_z=0.8"), quiet(), 1);
    REQUIRE(r.failures == 0);
    const auto direct = run_scenario("beat", build_scenario(base), quiet());
    CHECK(r.rows[0]["record"]["metrics"] == direct.metrics);
    CHECK(r.rows[0]["record"]["scenario_hash"] == direct.hash);
  }

  TEST_CASE("failed sweep points give partial results") {
    json base = load_preset("fig4");
    base["grid"]["points"] = 1024;  // too coarse for the longer media
    TempDir dir("partial");
    RunOptions o;
    o.out_dir = dir.path;
    const auto r = run_sweep(base, {}, "propagate", parse_axis("length.z_um=1,60"), o, 2);
    CHECK(r.failures == 1);
    CHECK(r.rows[0]["ok"] == true);
    CHECK(r.rows[1]["ok"] == false);
    CHECK(r.rows[1]["error"].get<std::string>().find("dt") != std::string::npos);
    CHECK(std::filesystem::exists(dir.path / "sweep.csv"));
  }

  TEST_CASE("axis specifications") {
    CHECK(parse_axis("a.b=1,2.5,-3").values.size() == 3);
    const auto r = parse_axis("x=10:20:3");
    CHECK(r.values[1] == 15.0);
    CHECK(parse_axis("x=4:9:1").values[0] == 4.0);
    CHECK_THROWS_AS(parse_axis("x"), ValidationError);
    CHECK_THROWS_AS(parse_axis("x=1,,2"), ValidationError);
    CHECK_THROWS_AS(parse_axis("x=1:2"), ValidationError);
    CHECK_THROWS_AS(parse_axis("x=1:2:0"), ValidationError);
    CHECK_THROWS_AS(parse_axis("x=a"), ValidationError);
  }

  TEST_CASE("identical scenarios give byte-identical data files") {
    TempDir a("det_a"), b("det_b");
    json j = load_preset("fig4");
    j["grid"]["points"] = 2048;
    j["length"]["z_um"] = 5;
    j["run"]["dz_um"] = 0.05;
    const auto s = build_scenario(j);
    RunOptions o;
    o.out_dir = a.path;
    run_scenario("propagate", s, o);
    o.out_dir = b.path;
    run_scenario("propagate", s, o);
    for (const char* f : {"field.csv", "spectrum.csv", "sidebands.csv"}) {
      CAPTURE(f);
      const auto x = slurp(a.path / f);
      CHECK(!x.empty());
      CHECK(x == slurp(b.path / f));
      CHECK(x.find('\r') == std::string::npos);
    }
    // 17 significant digits survive a round trip
    const auto field = slurp(a.path / "field.csv");
    const auto second = field.substr(field.find('\n') + 1);
    const auto cell = second.substr(0, second.find(','));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", std::stod(cell));
    CHECK(cell == buf);
  }

  TEST_CASE("json output format") {
    TempDir dir("json");
    CHECK(invoke({"--preset", "fig3b", "--out-dir", dir.path.string(), "--format", "json", "beat"}) == 0);
    const auto f = json::parse(slurp(dir.path / "field.json"));
    CHECK(f["columns"][0] == "eta_over_Tm");
    CHECK(f["rows"].size() == 8192);
    CHECK(json::parse(slurp(dir.path / "record.json"))["command"] == "beat");
  }

  TEST_CASE("exit codes") {
    TempDir dir("exit");
    const auto out = dir.path.string();
    std::string text, err;
    CHECK(invoke({"--preset", "fig3d", "--out-dir", out, "beat"}, &text) == 0);
    CHECK(text.find("beat fig3d") == 0);
    CHECK(invoke({"--preset", "fig3d", "--set", "probe.width_fs=-1", "beat"}, nullptr, &err) == 1);
    CHECK(err.find("probe.") != std::string::npos);
    CHECK(invoke({"--preset", "unknown", "beat"}) == 1);
    CHECK(invoke({"beat"}) == 1);
    CHECK(invoke({"--preset", "fig4", "warp"}) == 1);
    // runtime failure: the grid cannot resolve the compressed carrier
    CHECK(invoke({"--preset", "fig4", "--out-dir", out, "--set", "grid.points=1024", "propagate"}, nullptr, &err) == 2);
    CHECK(err.find("dt") != std::string::npos);
    CHECK(invoke({"--preset", "fig4", "--out-dir", out, "--set", "grid.points=1024", "sweep", "--command", "propagate",
               "--axis", "length.z_um=1,60"}) == 2);
    CHECK(invoke({"--preset", "fig4", "--out-dir", out, "sweep", "--command", "prepare", "--axis",
               "length.z_um=20:50:4"}) == 0);
    CHECK(invoke({"--list-presets"}, &text) == 0);
    CHECK(text.find("fig6") != std::string::npos);
    CHECK(invoke({"--help"}) == 0);
  }

  TEST_CASE("pool size from the environment") {
    const char* old = std::getenv("RAMAN_BEAT_THREADS");
    const std::string saved = old ? old : "";
    ::setenv("RAMAN_BEAT_THREADS", "3", 1);
    CHECK(default_threads() == 3);
    ::setenv("RAMAN_BEAT_THREADS", "zero", 1);
    CHECK(default_threads() >= 1);
    if (old) ::setenv("RAMAN_BEAT_THREADS", saved.c_str(), 1);
    else ::unsetenv("RAMAN_BEAT_THREADS");
  }
}
