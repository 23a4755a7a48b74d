#include "radblow/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <fmt/format.h>

namespace radblow {
namespace {

namespace fs = std::filesystem;

std::string opt_double(const std::optional<double>& x) {
  return x ? format_double(*x) : std::string("none");
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  }
  out << text;
  if (!out.flush()) {
    throw std::runtime_error(fmt::format("write to {} failed", path.string()));
  }
}

std::string snapshot_text(const FluidState& state, const RadialGrid& grid) {
  std::string out = "r\trho\tV\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += fmt::format("{}\t{}\t{}\n", format_double(grid.center(i)), format_double(state.rho[i]),
                       format_double(state.vel[i]));
  }
  return out;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  const std::time_t t = static_cast<std::time_t>(secs);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunRecord execute_one(const std::string& run_id, const ExperimentConfig& config, const fs::path& root,
                      const Simulator& simulator) {
  RunRecord record;
  record.run_id = run_id;
  record.config = config;
  const fs::path dir = root / run_id;
  const std::string started = utc_now();
  const auto clock_start = std::chrono::steady_clock::now();
  try {
    fs::create_directories(dir);
    write_file(dir / "resolved-config.txt", to_config_text(config));
    RunSpec spec{run_id, config, RadialGrid(config.n_cells, config.model.support_radius), {}};
    spec.initial = build_initial_profile(config.initial, spec.grid, config.numerics.support_margin_cells);
    record.warnings = spec.initial.warnings;
    RunResult result = simulator(spec);
    record.report = result.report;
    if (result.report.termination == Termination::positivity_violated) {
      record.error = "density positivity violated";
    }
    write_file(dir / "series.tsv", series_text(result.series));
    for (const auto& snap : result.trajectory.checkpoints) {
      write_file(dir / fmt::format("snapshot-{}.tsv", snap.time), snapshot_text(snap, spec.grid));
    }
  } catch (const std::exception& e) {
    record.error = e.what();
  }
  try {
    write_file(dir / "summary.txt", summary_text(record));
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
    write_file(dir / "metadata.txt",
               fmt::format("run_id = {}\nstarted = {}\nfinished = {}\nwall_seconds = {:.3f}\n", run_id,
                           started, utc_now(), seconds));
  } catch (const std::exception& e) {
    if (record.error.empty()) {
      record.error = e.what();
    }
  }
  return record;
}

std::string index_text(const std::vector<RunRecord>& runs) {
  std::string out =
      "run_id\tn_cells\tdim\tdelta\tpressure_const\tgamma\th0\tt_bound\tt_detect\ttermination\tverdict\terror\n";
  for (const auto& r : runs) {
    const auto& m = r.config.model;
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t", r.run_id, r.config.n_cells, m.dim, m.delta,
                       format_double(m.pressure_const), format_double(m.gamma));
    if (r.report) {
      out += fmt::format("{}\t{}\t{}\t{}\t{}\t", format_double(r.report->h0), opt_double(r.report->t_bound),
                         opt_double(r.report->t_detect), to_string(r.report->termination),
                         to_string(r.report->verdict));
    } else {
      out += "none\tnone\tnone\tnone\tnone\t";
    }
    out += r.error.empty() ? "none" : r.error;
    out += '\n';
  }
  return out;
}

}  // namespace

RunResult simulate(const RunSpec& spec) {
  return run(spec.initial.rho, spec.initial.vel, spec.grid, spec.config.model, spec.config.numerics);
}

int exit_status(const std::vector<RunRecord>& runs) {
  const bool violated = std::any_of(runs.begin(), runs.end(), [](const RunRecord& r) {
    return r.report && r.report->verdict == Verdict::violated;
  });
  if (violated) {
    return 2;
  }
  const bool failed =
      std::any_of(runs.begin(), runs.end(), [](const RunRecord& r) { return !r.error.empty(); });
  return failed ? 1 : 0;
}

std::string series_text(const DiagnosticsSeries& s) {
  std::string out = "t\tH\tmass\tenergy_lhs\triccati_residual\tenvelope\tcauchy_gap\tmax_abs_dVdr\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", format_double(s.times[k]), format_double(s.h[k]),
                       format_double(s.mass[k]), format_double(s.energy_lhs[k]),
                       format_double(s.riccati_residual[k]), format_double(s.envelope[k]),
                       format_double(s.cauchy_gap[k]), format_double(s.max_abs_dvdr[k]));
  }
  return out;
}

std::string summary_text(const RunRecord& record) {
  std::string out;
  out += fmt::format("run_id = {}\n", record.run_id);
  out += fmt::format("config_hash = {}\n", config_hash(record.config));
  out += fmt::format("status = {}\n", record.error.empty() ? "ok" : "failed");
  if (!record.error.empty()) {
    out += fmt::format("error = {}\n", record.error);
  }
  for (const auto& w : record.warnings) {
    out += fmt::format("warning = {}\n", w);
  }
  if (!record.report) {
    return out;
  }
  const RunReport& r = *record.report;
  out += fmt::format("h0 = {}\n", format_double(r.h0));
  out += fmt::format("theorem_applicable = {}\n", r.theorem_applicable);
  out += fmt::format("t_bound = {}\n", opt_double(r.t_bound));
  out += fmt::format("t_detect = {}\n", opt_double(r.t_detect));
  out += fmt::format("t_final = {}\n", format_double(r.t_final));
  out += fmt::format("termination = {}\n", to_string(r.termination));
  out += fmt::format("verdict = {}\n", to_string(r.verdict));
  out += fmt::format("envelope_breaches = {}\n", r.envelope_breaches);
  out += fmt::format("cauchy_breaches = {}\n", r.cauchy_breaches);
  out += fmt::format("monotonicity_breaches = {}\n", r.monotonicity_breaches);
  out += fmt::format("min_riccati_residual = {}\n", format_double(r.min_riccati_residual));
  out += fmt::format("mass_drift = {}\n", format_double(r.mass_drift));
  out += fmt::format("tolerance.envelope_rel = {}\n", format_double(r.tolerances.envelope_rel));
  out += fmt::format("tolerance.cauchy_rel = {}\n", format_double(r.tolerances.cauchy_rel));
  out += fmt::format("tolerance.h_monotone_rel = {}\n", format_double(r.tolerances.h_monotone_rel));
  out += fmt::format("tolerance.mass_drift_rel = {}\n", format_double(r.tolerances.mass_drift_rel));
  out += fmt::format("steepening_threshold = {}\n", format_double(record.config.numerics.steepening_threshold));
  for (const auto& note : r.notes) {
    out += fmt::format("note = {}\n", note);
  }
  return out;
}

ExecuteResult execute(const ExperimentConfig& config, const ExecuteOptions& options,
                      const Simulator& simulator) {
  validate_config(config);
  const fs::path root = options.output_dir.value_or(fs::path(config.output_dir));
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec || !fs::is_directory(root)) {
    throw std::runtime_error(fmt::format("cannot create output directory {}: {}", root.string(),
                                         ec ? ec.message() : "not a directory"));
  }

  std::vector<ExperimentConfig> configs;
  if (options.expand_sweep) {
    configs = expand_sweep(config);
  } else {
    configs.push_back(config);
    configs.back().sweep = {};
  }

  ExecuteResult result;
  result.runs.resize(configs.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  const auto worker = [&] {
    for (std::size_t k = next++; k < configs.size(); k = next++) {
      const std::string run_id = fmt::format("run-{:03d}", k);
      result.runs[k] = execute_one(run_id, configs[k], root, simulator);
      if (!result.runs[k].error.empty()) {
        std::lock_guard lock(log_mutex);
        std::cerr << fmt::format("{}: {}\n", run_id, result.runs[k].error);
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, configs.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t j = 1; j < jobs; ++j) {
      pool.emplace_back(worker);
    }
    worker();
  }

  write_file(root / "index.tsv", index_text(result.runs));
  result.exit_code = exit_status(result.runs);
  return result;
}

}  // namespace radblow
