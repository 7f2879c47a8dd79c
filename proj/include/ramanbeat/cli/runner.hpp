#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ramanbeat/cli/scenario.hpp"

namespace ramanbeat::cli {

enum class Format { Csv, Json };

struct RunOptions {
  std::filesystem::path out_dir = ".";
  Format format = Format::Csv;
  bool write_files = true;
  std::uint64_t seed = 0;  // reserved: every engine is deterministic
};

struct RunRecord {
  std::string name;
  std::string command;
  std::string hash;
  std::string version;
  json parameters;  // resolved SI parameters
  json metrics;
  std::vector<std::string> files;
  std::string started;
  std::string finished;

  json to_json() const;
};

/// Runs one subcommand (prepare, beat, propagate, cascade, spectrum) on a
/// scenario. Data files go to options.out_dir; the record is also written as
/// record.json there. Throws ValidationError when the scenario lacks what
/// the command needs and std::runtime_error subclasses from the engines.
RunRecord run_scenario(const std::string& command, const Scenario& scenario, const RunOptions& options);

struct SweepAxis {
  std::string path;
  std::vector<json> values;
};

/// "path=v1,v2,..." or "path=start:stop:count" (inclusive, count >= 1).
SweepAxis parse_axis(const std::string& spec);

struct SweepOutcome {
  std::vector<json> rows;  // one per axis value, in axis order
  std::size_t failures = 0;
};

/// Runs command at every axis point on a pool of `threads` workers. Each
/// point gets its own scenario; results are ordered by axis index. Writes
/// sweep.csv and sweep.json to options.out_dir.
SweepOutcome run_sweep(const json& base, const std::filesystem::path& base_dir, const std::string& command,
                       const SweepAxis& axis, const RunOptions& options, std::size_t threads);

/// RAMAN_BEAT_THREADS if set, otherwise the hardware concurrency.
std::size_t default_threads();

/// Command-line entry point; returns 0 (success), 1 (validation) or 2 (runtime).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ramanbeat::cli
