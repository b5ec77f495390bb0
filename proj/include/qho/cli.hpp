#pragma once

// Command-line front end. Every output file starts with a `#` comment header
// carrying the full RunConfig as one JSON line, which `qho replay <file>`
// reads back to reproduce the run.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qho::cli {

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kUsageError = 2 };

struct RunConfig {
  std::string command;

  // Oscillator. Molecular mode is selected by any of mass/wavenumber/preset.
  std::vector<double> alphas;  // empty = command default
  std::optional<double> mass_amu;
  std::optional<double> wavenumber_cm1;
  std::string preset;
  std::string config_file;

  // Temperatures: kelvin (molecular only) and/or coldness values.
  std::vector<double> temperatures_k;
  std::vector<double> thetas;

  int grid = 0;  // 0 = command default (density 1001, oracle-check 101)
  double half_width_sigmas = 6.0;
  double tol = 1e-12;
  double max_deviation = 1e-10;
  double normalization_tol = 1e-6;
  std::uint64_t seed = 20261018;
  std::string format = "csv";
  bool oracle = false;
  std::string out = ".";  // not echoed: replay chooses its own directory

  // classical-sim
  double amplitude = 1.0;
  std::int64_t steps = 10'000'000;
  double steps_per_period = 1000.0;
  int bins = 50;
  int excluded_edge_bins = 2;
  double max_histogram_deviation = 0.02;
  double max_energy_drift = 1e-6;

  // sample
  std::string regime = "quantum";
  std::int64_t count = 1'000'000;
  bool raw = false;

  bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

// Reads the config echo from a CSV (`# config: {...}`) or JSON output file.
RunConfig read_config_echo(const std::string& path);

// Resolves defaults and presets, then checks the config; throws
// qho::ValidationError on the first problem.
RunConfig resolve(RunConfig config);

// Runs an already-resolved config. Writes files under config.out and a short
// report to `report`. Returns kOk or kValidationFailed.
int execute(const RunConfig& config, std::ostream& report);

// Full entry point: parses args (without the program name), resolves, runs.
int run(const std::vector<std::string>& args, std::ostream& report, std::ostream& errors);

}  // namespace qho::cli
