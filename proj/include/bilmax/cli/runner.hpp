#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bilmax/cli/config.hpp"

namespace bilmax::cli {

/// Exit statuses of `run`.
enum ExitCode : int {
  kExitPass = 0,
  kExitVerdictFailure = 1,
  kExitInvalidConfig = 2,
  kExitResolution = 3,
};

struct RunOptions {
  std::optional<std::string> out_dir;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

struct Verdict {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  /// "<=", ">=", "<" or ">": how value is compared with threshold.
  std::string relation;
};

enum class Status { passed, failed, resolution_error, invalid, error };

std::string to_string(Status status);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct ExperimentOutcome {
  std::string name;
  ExperimentKind kind = ExperimentKind::decompose;
  Status status = Status::passed;
  std::string message;
  Json results = Json::object();
  std::vector<Verdict> verdicts;
  Table samples;
  std::vector<std::string> warnings;
};

// Runs one validated experiment. Raw field dumps, when enabled, go to
// out_dir; everything else is returned. Library errors are caught and
// reflected in the status.
ExperimentOutcome run_experiment(const ExperimentConfig& config, std::uint64_t suite_seed,
                                 const std::string& out_dir);

/// Report document of one outcome; contains no timing information.
Json report_json(const ExperimentConfig& config, const ExperimentOutcome& outcome,
                 std::uint64_t suite_seed);

/// Comma-separated samples with 17 significant digits.
std::string to_csv(const Table& table);

// Loads, overrides, validates and runs a suite, writing <name>.json and
// <name>.csv per experiment plus report.json and metadata.json. Returns an
// ExitCode.
int run(const std::string& config_path, const RunOptions& options, std::ostream& log);

}  // namespace bilmax::cli
