// Command-line front end: run, sweep or check an experiment config.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "radblow/config.hpp"
#include "radblow/experiment.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error(fmt::format("cannot open {}", path));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial Euler / Euler-Poisson solver with blowup diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::string config_path;
  std::string output_dir;
  std::size_t jobs = 1;
  bool strict = true;
  app.add_option("--output-dir", output_dir, "Override output_dir from the config");
  app.add_option("--jobs", jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_flag("--strict,!--no-strict", strict, "Reject unknown config keys (default on)");

  auto* run_cmd = app.add_subcommand("run", "Run the base configuration");
  auto* sweep_cmd = app.add_subcommand("sweep", "Run every combination in [sweep]");
  auto* check_cmd = app.add_subcommand("check", "Validate a config and print it resolved");
  for (auto* cmd : {run_cmd, sweep_cmd, check_cmd}) {
    cmd->add_option("config", config_path, "Config file")->required();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const auto parsed = radblow::parse_config(read_file(config_path), {.strict = strict});
    for (const auto& w : parsed.warnings) {
      std::cerr << "warning: " << w << '\n';
    }
    if (check_cmd->parsed()) {
      std::cout << radblow::to_config_text(parsed.config);
      std::cout << fmt::format("# runs: {}\n", radblow::expand_sweep(parsed.config).size());
      return 0;
    }

    radblow::ExecuteOptions options;
    options.jobs = jobs;
    options.expand_sweep = sweep_cmd->parsed();
    if (!output_dir.empty()) {
      options.output_dir = output_dir;
    }
    const auto result = radblow::execute(parsed.config, options);
    for (const auto& r : result.runs) {
      if (r.report) {
        std::cout << fmt::format("{}  verdict={}  termination={}  t_detect={}  t_bound={}\n", r.run_id,
                                 to_string(r.report->verdict), to_string(r.report->termination),
                                 r.report->t_detect ? fmt::format("{:.6g}", *r.report->t_detect) : "none",
                                 r.report->t_bound ? fmt::format("{:.6g}", *r.report->t_bound) : "none");
      } else {
        std::cout << fmt::format("{}  failed: {}\n", r.run_id, r.error);
      }
    }
    return result.exit_code;
  } catch (const radblow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
