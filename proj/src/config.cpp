#include "radblow/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>

#include <fmt/format.h>

namespace radblow {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw std::invalid_argument(fmt::format("'{}' is not a valid number", text));
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) {
      throw std::invalid_argument(fmt::format("'{}' is not finite", text));
    }
  }
  return value;
}

template <class T>
std::vector<T> parse_list(std::string_view text, bool allow_empty) {
  std::vector<T> out;
  text = trim(text);
  if (text.empty()) {
    if (!allow_empty) {
      throw std::invalid_argument("list must not be empty");
    }
    return out;
  }
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number<T>(trim(text.substr(0, comma))));
    if (comma == std::string_view::npos) {
      break;
    }
    text = text.substr(comma + 1);
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    if constexpr (std::is_floating_point_v<T>) {
      out += format_double(values[i]);
    } else {
      out += fmt::format("{}", values[i]);
    }
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

struct Schema {
  std::map<std::string, Setter, std::less<>> keys;  // "section.key"
};

Schema make_schema(bool& threshold_auto) {
  Schema s;
  auto& k = s.keys;
  k[".output_dir"] = [](ExperimentConfig& c, std::string_view v) {
    if (v.empty()) {
      throw std::invalid_argument("output_dir must not be empty");
    }
    c.output_dir = std::string(v);
  };

  k["model.dim"] = [](ExperimentConfig& c, std::string_view v) { c.model.dim = parse_number<int>(v); };
  k["model.delta"] = [](ExperimentConfig& c, std::string_view v) { c.model.delta = parse_number<int>(v); };
  k["model.pressure_const"] = [](ExperimentConfig& c, std::string_view v) {
    c.model.pressure_const = parse_number<double>(v);
  };
  k["model.gamma"] = [](ExperimentConfig& c, std::string_view v) { c.model.gamma = parse_number<double>(v); };
  k["model.support_radius"] = [](ExperimentConfig& c, std::string_view v) {
    c.model.support_radius = parse_number<double>(v);
  };

  k["numerics.n_cells"] = [](ExperimentConfig& c, std::string_view v) { c.n_cells = parse_number<std::size_t>(v); };
  k["numerics.cfl"] = [](ExperimentConfig& c, std::string_view v) { c.numerics.cfl = parse_number<double>(v); };
  k["numerics.t_end"] = [](ExperimentConfig& c, std::string_view v) { c.numerics.t_end = parse_number<double>(v); };
  k["numerics.dt_floor"] = [](ExperimentConfig& c, std::string_view v) {
    c.numerics.dt_floor = parse_number<double>(v);
  };
  k["numerics.steepening_threshold"] = [&threshold_auto](ExperimentConfig& c, std::string_view v) {
    if (v == "auto") {
      threshold_auto = true;
      return;
    }
    threshold_auto = false;
    c.numerics.steepening_threshold = parse_number<double>(v);
  };
  k["numerics.output_stride"] = [](ExperimentConfig& c, std::string_view v) {
    c.numerics.output_stride = parse_number<std::size_t>(v);
  };
  k["numerics.support_margin_cells"] = [](ExperimentConfig& c, std::string_view v) {
    c.numerics.support_margin_cells = parse_number<std::size_t>(v);
  };
  k["numerics.checkpoints"] = [](ExperimentConfig& c, std::string_view v) {
    c.numerics.checkpoints = parse_list<double>(v, true);
  };
  k["numerics.vacuum_floor_rel"] = [](ExperimentConfig& c, std::string_view v) {
    c.numerics.vacuum_floor_rel = parse_number<double>(v);
  };
  k["numerics.positivity_tol_rel"] = [](ExperimentConfig& c, std::string_view v) {
    c.numerics.positivity_tol_rel = parse_number<double>(v);
  };

  k["initial.family"] = [](ExperimentConfig& c, std::string_view v) { c.initial.family = parse_family(v); };
  k["initial.rho_amplitude"] = [](ExperimentConfig& c, std::string_view v) {
    c.initial.rho_amplitude = parse_number<double>(v);
  };
  k["initial.rho_power"] = [](ExperimentConfig& c, std::string_view v) {
    c.initial.rho_power = parse_number<double>(v);
  };
  k["initial.vel_amplitude"] = [](ExperimentConfig& c, std::string_view v) {
    c.initial.vel_amplitude = parse_number<double>(v);
  };
  k["initial.width"] = [](ExperimentConfig& c, std::string_view v) { c.initial.width = parse_number<double>(v); };
  k["initial.modes"] = [](ExperimentConfig& c, std::string_view v) { c.initial.modes = parse_number<int>(v); };
  k["initial.seed"] = [](ExperimentConfig& c, std::string_view v) {
    c.initial.seed = parse_number<std::uint64_t>(v);
  };

  k["sweep.delta"] = [](ExperimentConfig& c, std::string_view v) { c.sweep.delta = parse_list<int>(v, false); };
  k["sweep.pressure_const"] = [](ExperimentConfig& c, std::string_view v) {
    c.sweep.pressure_const = parse_list<double>(v, false);
  };
  k["sweep.gamma"] = [](ExperimentConfig& c, std::string_view v) { c.sweep.gamma = parse_list<double>(v, false); };
  k["sweep.n_cells"] = [](ExperimentConfig& c, std::string_view v) {
    c.sweep.n_cells = parse_list<std::size_t>(v, false);
  };
  return s;
}

const std::set<std::string, std::less<>> kSections{"model", "numerics", "initial", "sweep"};

// Runs `check`, rewrapping std::invalid_argument as a ConfigError under `field`.
template <class F>
void checked(std::string_view field, F&& check) {
  try {
    check();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("{}: {}", field, e.what()));
  }
}

}  // namespace

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

ParsedConfig parse_config(std::string_view text, const ParseOptions& options) {
  bool threshold_auto = true;
  const Schema schema = make_schema(threshold_auto);
  ParsedConfig out;
  std::map<std::string, std::size_t, std::less<>> seen;  // "section.key" -> line
  std::map<std::string, std::size_t, std::less<>> sections_seen;
  std::string section;
  bool skipping_section = false;

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(fmt::format("line {}: unterminated section header", line_no), line_no);
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) {
        throw ConfigError(fmt::format("line {}: empty section name", line_no), line_no);
      }
      if (const auto it = sections_seen.find(section); it != sections_seen.end()) {
        throw ConfigError(fmt::format("line {}: section [{}] repeated (first on line {})", line_no,
                                      section, it->second),
                          line_no);
      }
      sections_seen.emplace(section, line_no);
      skipping_section = !kSections.contains(section);
      if (skipping_section) {
        if (options.strict) {
          throw ConfigError(fmt::format("line {}: unknown section [{}]", line_no, section), line_no);
        }
        out.warnings.push_back(fmt::format("line {}: ignored unknown section [{}]", line_no, section));
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no), line_no);
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(fmt::format("line {}: missing key before '='", line_no), line_no);
    }
    const std::string full = fmt::format("{}.{}", section, key);
    const std::string shown = section.empty() ? std::string(key) : full;
    if (const auto it = seen.find(full); it != seen.end()) {
      throw ConfigError(fmt::format("line {}: duplicate key '{}' (first defined on line {})", line_no,
                                    shown, it->second),
                        line_no);
    }
    seen.emplace(full, line_no);
    if (skipping_section) {
      continue;
    }
    const auto setter = schema.keys.find(full);
    if (setter == schema.keys.end()) {
      if (options.strict) {
        throw ConfigError(fmt::format("line {}: unknown key '{}'", line_no, shown), line_no);
      }
      out.warnings.push_back(fmt::format("line {}: ignored unknown key '{}'", line_no, shown));
      continue;
    }
    try {
      setter->second(out.config, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(fmt::format("line {}: {}: {}", line_no, shown, e.what()), line_no);
    }
  }

  checked("initial", [&] { out.config.initial.validate(); });
  checked("model", [&] { out.config.model.validate(); });
  if (threshold_auto) {
    out.config.numerics.steepening_threshold =
        auto_steepening_threshold(out.config.initial, out.config.model.support_radius);
  }
  validate_config(out.config);
  return out;
}

void validate_config(const ExperimentConfig& config) {
  checked("model", [&] { config.model.validate(); });
  checked("numerics", [&] { config.numerics.validate(); });
  checked("initial", [&] { config.initial.validate(); });
  checked("numerics.n_cells", [&] {
    if (config.n_cells <= config.numerics.support_margin_cells) {
      throw std::invalid_argument(fmt::format("n_cells must exceed support_margin_cells ({})",
                                              config.numerics.support_margin_cells));
    }
  });
  if (config.output_dir.empty()) {
    throw ConfigError("output_dir must not be empty");
  }
  const auto& sw = config.sweep;
  const auto nonempty = [](const auto& list, std::string_view name) {
    if (list && list->empty()) {
      throw ConfigError(fmt::format("sweep.{}: list must not be empty", name));
    }
  };
  nonempty(sw.delta, "delta");
  nonempty(sw.pressure_const, "pressure_const");
  nonempty(sw.gamma, "gamma");
  nonempty(sw.n_cells, "n_cells");
  for (const auto& run : expand_sweep(config)) {
    checked("sweep", [&] {
      run.model.validate();
      if (run.n_cells <= run.numerics.support_margin_cells) {
        throw std::invalid_argument(fmt::format("n_cells must exceed support_margin_cells ({})",
                                                run.numerics.support_margin_cells));
      }
    });
  }
}

std::string to_config_text(const ExperimentConfig& c) {
  std::string out;
  out += fmt::format("output_dir = {}\n", c.output_dir);
  out += "\n[model]\n";
  out += fmt::format("dim = {}\n", c.model.dim);
  out += fmt::format("delta = {}\n", c.model.delta);
  out += fmt::format("pressure_const = {}\n", format_double(c.model.pressure_const));
  out += fmt::format("gamma = {}\n", format_double(c.model.gamma));
  out += fmt::format("support_radius = {}\n", format_double(c.model.support_radius));
  const auto& n = c.numerics;
  out += "\n[numerics]\n";
  out += fmt::format("n_cells = {}\n", c.n_cells);
  out += fmt::format("cfl = {}\n", format_double(n.cfl));
  out += fmt::format("t_end = {}\n", format_double(n.t_end));
  out += fmt::format("dt_floor = {}\n", format_double(n.dt_floor));
  out += fmt::format("steepening_threshold = {}\n", format_double(n.steepening_threshold));
  out += fmt::format("output_stride = {}\n", n.output_stride);
  out += fmt::format("support_margin_cells = {}\n", n.support_margin_cells);
  out += fmt::format("checkpoints = {}\n", join(n.checkpoints));
  out += fmt::format("vacuum_floor_rel = {}\n", format_double(n.vacuum_floor_rel));
  out += fmt::format("positivity_tol_rel = {}\n", format_double(n.positivity_tol_rel));
  const auto& p = c.initial;
  out += "\n[initial]\n";
  out += fmt::format("family = {}\n", to_string(p.family));
  out += fmt::format("rho_amplitude = {}\n", format_double(p.rho_amplitude));
  out += fmt::format("rho_power = {}\n", format_double(p.rho_power));
  out += fmt::format("vel_amplitude = {}\n", format_double(p.vel_amplitude));
  out += fmt::format("width = {}\n", format_double(p.width));
  out += fmt::format("modes = {}\n", p.modes);
  out += fmt::format("seed = {}\n", p.seed);
  if (!c.sweep.empty()) {
    out += "\n[sweep]\n";
    if (c.sweep.delta) {
      out += fmt::format("delta = {}\n", join(*c.sweep.delta));
    }
    if (c.sweep.pressure_const) {
      out += fmt::format("pressure_const = {}\n", join(*c.sweep.pressure_const));
    }
    if (c.sweep.gamma) {
      out += fmt::format("gamma = {}\n", join(*c.sweep.gamma));
    }
    if (c.sweep.n_cells) {
      out += fmt::format("n_cells = {}\n", join(*c.sweep.n_cells));
    }
  }
  return out;
}

std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig& config) {
  const auto& sw = config.sweep;
  const auto deltas = sw.delta.value_or(std::vector<int>{config.model.delta});
  const auto ks = sw.pressure_const.value_or(std::vector<double>{config.model.pressure_const});
  const auto gammas = sw.gamma.value_or(std::vector<double>{config.model.gamma});
  const auto cells = sw.n_cells.value_or(std::vector<std::size_t>{config.n_cells});
  std::vector<ExperimentConfig> out;
  for (const int d : deltas) {
    for (const double k : ks) {
      for (const double g : gammas) {
        for (const std::size_t n : cells) {
          ExperimentConfig run = config;
          run.sweep = {};
          run.model.delta = d;
          run.model.pressure_const = k;
          run.model.gamma = g;
          run.n_cells = n;
          out.push_back(std::move(run));
        }
      }
    }
  }
  return out;
}

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : to_config_text(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace radblow
