#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "radblow/model.hpp"
#include "radblow/profiles.hpp"
#include "radblow/solver.hpp"

namespace radblow {

/// Syntax or semantic error in a config document. `line()` is 0 when the
/// error is not tied to one line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Optional parameter lists; a sweep runs their Cartesian product.
struct SweepSpec {
  std::optional<std::vector<int>> delta;
  std::optional<std::vector<double>> pressure_const;
  std::optional<std::vector<double>> gamma;
  std::optional<std::vector<std::size_t>> n_cells;

  bool empty() const { return !delta && !pressure_const && !gamma && !n_cells; }
  bool operator==(const SweepSpec&) const = default;
};

struct ExperimentConfig {
  ModelConfig model;
  NumericsConfig numerics;
  std::size_t n_cells = 1024;
  InitialProfileSpec initial;
  SweepSpec sweep;
  std::string output_dir = "radblow-out";

  bool operator==(const ExperimentConfig&) const = default;
};

struct ParseOptions {
  bool strict = true;  // reject unknown sections and keys
};

struct ParsedConfig {
  ExperimentConfig config;
  std::vector<std::string> warnings;  // ignored keys in non-strict mode
};

/// Reads an INI-style document:
///
///   output_dir = out          # keys before any section
///   [model]     dim delta pressure_const gamma support_radius
///   [numerics]  n_cells cfl t_end dt_floor steepening_threshold output_stride
///               support_margin_cells checkpoints vacuum_floor_rel positivity_tol_rel
///   [initial]   family rho_amplitude rho_power vel_amplitude width modes seed
///   [sweep]     delta pressure_const gamma n_cells   (comma-separated lists)
///
/// `#` and `;` start comments. Missing keys take their defaults, and
/// `steepening_threshold = auto` (the default) resolves against the initial
/// velocity. Throws ConfigError.
ParsedConfig parse_config(std::string_view text, const ParseOptions& options = {});

/// Checks every field and every sweep combination; throws ConfigError naming
/// the field.
void validate_config(const ExperimentConfig& config);

/// Fully resolved document; parse_config(to_config_text(c)).config == c.
std::string to_config_text(const ExperimentConfig& config);

/// One config per sweep combination, in lexicographic order of
/// (delta, pressure_const, gamma, n_cells). Sweep lists are cleared in the
/// results.
std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig& config);

/// 64-bit FNV-1a of the resolved config text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

/// %.17g, the format used for every floating-point value the runner emits.
std::string format_double(double x);

}  // namespace radblow
