#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "radblow/config.hpp"
#include "radblow/solver.hpp"

namespace radblow {

/// Everything a simulator needs for one run.
struct RunSpec {
  std::string run_id;
  ExperimentConfig config;  // sweep already expanded
  RadialGrid grid;
  InitialData initial;
};

/// Produces the result of one run. The default is the finite-volume solver;
/// tests inject fixtures here.
using Simulator = std::function<RunResult(const RunSpec&)>;

RunResult simulate(const RunSpec& spec);

struct ExecuteOptions {
  std::size_t jobs = 1;
  bool expand_sweep = false;  // false: the base config only
  std::optional<std::filesystem::path> output_dir;  // overrides config.output_dir
};

struct RunRecord {
  std::string run_id;
  ExperimentConfig config;
  std::optional<RunReport> report;  // absent when the run threw
  std::string error;
  std::vector<std::string> warnings;
};

struct ExecuteResult {
  std::vector<RunRecord> runs;
  int exit_code = 0;
};

/// Exit status: 2 if any run ends with verdict violated; otherwise 1 if any
/// run failed (exception or positivity violation); otherwise 0.
int exit_status(const std::vector<RunRecord>& runs);

/// Runs every configuration on `jobs` worker threads. Each run writes into
/// <output_dir>/<run_id>/:
///   series.tsv           t H mass energy_lhs riccati_residual envelope cauchy_gap max_abs_dVdr
///   summary.txt          run id, config hash, bound, detection, verdict, tolerances
///   resolved-config.txt  re-parses to the run's ExperimentConfig
///   snapshot-<t>.tsv     r rho V, one per checkpoint
///   metadata.txt         wall-clock timestamps, kept out of summary.txt
/// and <output_dir>/index.tsv is written after all workers finish. Throws
/// std::runtime_error if the output directory cannot be created.
ExecuteResult execute(const ExperimentConfig& config, const ExecuteOptions& options = {},
                      const Simulator& simulator = simulate);

/// Deterministic text of summary.txt.
std::string summary_text(const RunRecord& record);

/// Deterministic text of series.tsv.
std::string series_text(const DiagnosticsSeries& series);

}  // namespace radblow
