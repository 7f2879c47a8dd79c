#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ramanbeat/core/grid.hpp"
#include "ramanbeat/core/pulse.hpp"
#include "ramanbeat/medium/dynamics.hpp"
#include "ramanbeat/medium/parameters.hpp"
#include "ramanbeat/medium/state.hpp"
#include "ramanbeat/propagator/config.hpp"

namespace ramanbeat::cli {

using nlohmann::json;

/// A scenario field failed validation; path() is the dotted JSON path.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct ProbeSpec {
  double amplitude = 1.0;  // V/m
  Frequency carrier;
  double width = 0.0;      // s
  WidthConvention convention = WidthConvention::IntensityFwhm;
  // Peak given either in lab local time tau or in reduced time eta.
  double peak = 0.0;       // s
  bool peak_in_eta = false;
};

struct DriveSpec {
  Frequency upper;
  Frequency lower;
  double intensity = 0.0;  // W/m^2, peak, same for both drives
  double width = 0.0;      // s, intensity FWHM
  double peak_time = 0.0;  // s
  StateDynamics dynamics;
  TimeGrid tau = TimeGrid(-20e-9, 0.2e-9, 201);
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;

  /// Peak field amplitude sqrt(2 I / (c eps0)).
  double amplitude() const;
  DriveConfig config(Frequency omega_m) const;
};

/// Fully resolved scenario in SI units. `resolved` is the normalized JSON
/// (after overrides) the scenario was built from; its hash identifies runs.
struct Scenario {
  json resolved;
  std::string name;
  std::string command;  // default subcommand for sweeps

  MediumParameters medium = MediumParameters::solid_h2();
  // exactly one preparation
  std::optional<PreparedCoherence> direct;  // kappa filled in from the medium
  bool adiabatic = false;

  std::optional<double> z;        // m
  std::optional<double> alpha_z;  // given directly (analytic engine only)

  std::optional<ProbeSpec> probe;  // absent: empty probe
  TimeGrid grid = TimeGrid::centered(4096, 1e-16);

  PropagationConfig run;
  bool compare_dispersionless = false;
  int sideband_min = -5, sideband_max = 12;
  std::size_t decimation = 4;

  std::optional<DriveSpec> drive;
  std::vector<std::string> outputs;

  bool wants(const std::string& output) const;
};

json read_json_file(const std::filesystem::path& path);
/// Directory holding the preset scenario files (RAMAN_BEAT_PRESET_DIR overrides).
std::filesystem::path preset_dir();
json load_preset(const std::string& name);
std::vector<std::string> preset_names();

/// "a.b.c=value"; value parsed as JSON, falling back to a string.
void apply_override(json& scenario, const std::string& assignment);
void set_path(json& scenario, const std::string& path, const json& value);

/// Validates and resolves. Relative file references are taken relative to base_dir.
Scenario build_scenario(const json& source, const std::filesystem::path& base_dir = {});

/// Level table CSV: header naming detuning_a, detuning_b (suffix _cm or
/// _rad_s) and mu_a, mu_b (suffix _Cm or _debye).
LevelTable read_level_table(const std::filesystem::path& path);

std::uint64_t fnv1a(const std::string& bytes);
std::string scenario_hash(const json& resolved);

}  // namespace ramanbeat::cli
