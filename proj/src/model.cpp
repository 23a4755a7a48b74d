#include "radblow/model.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace radblow {

void ModelConfig::validate() const {
  if (dim < 1 || dim > 3) {
    throw std::invalid_argument(fmt::format("dim must be 1, 2 or 3 (got {})", dim));
  }
  if (delta < -1 || delta > 1) {
    throw std::invalid_argument(fmt::format("delta must be -1, 0 or 1 (got {})", delta));
  }
  if (!(pressure_const >= 0.0) || !std::isfinite(pressure_const)) {
    throw std::invalid_argument("pressure_const must be >= 0");
  }
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be >= 1");
  }
  if (!(support_radius > 0.0) || !std::isfinite(support_radius)) {
    throw std::invalid_argument("support_radius must be > 0");
  }
}

RadialGrid::RadialGrid(std::size_t n_cells, double radius) : radius_(radius) {
  if (n_cells == 0) {
    throw std::invalid_argument("grid needs at least one cell");
  }
  if (!(radius > 0.0)) {
    throw std::invalid_argument("grid radius must be > 0");
  }
  dr_ = radius / static_cast<double>(n_cells);
  centers_.resize(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) {
    centers_[i] = (static_cast<double>(i) + 0.5) * dr_;
  }
}

double pressure(double rho, const ModelConfig& cfg) {
  if (rho < 0.0) {
    throw DomainError(fmt::format("pressure: negative density {}", rho));
  }
  if (cfg.pressureless() || rho == 0.0) {
    return 0.0;
  }
  return cfg.pressure_const * std::pow(rho, cfg.gamma);
}

double sound_speed(double rho, const ModelConfig& cfg) {
  if (cfg.pressureless() || rho <= 0.0) {
    return 0.0;
  }
  return std::sqrt(cfg.pressure_const * cfg.gamma * std::pow(rho, cfg.gamma - 1.0));
}

double enthalpy(double rho, const ModelConfig& cfg) {
  if (cfg.pressureless()) {
    return 0.0;
  }
  if (cfg.gamma == 1.0) {
    return cfg.pressure_const * std::log(rho);
  }
  if (rho <= 0.0) {
    return 0.0;
  }
  return cfg.pressure_const * cfg.gamma / (cfg.gamma - 1.0) * std::pow(rho, cfg.gamma - 1.0);
}

void check_shape(std::span<const double> field, const RadialGrid& grid, const char* name) {
  if (field.size() != grid.size()) {
    throw ShapeError(
        fmt::format("{} has {} samples but the grid has {} cells", name, field.size(), grid.size()));
  }
}

ValidationReport validate_initial_data(std::span<const double> rho0, std::span<const double> vel0,
                                       const RadialGrid& grid, const ModelConfig& cfg,
                                       std::size_t support_margin_cells) {
  check_shape(rho0, grid, "rho0");
  check_shape(vel0, grid, "vel0");

  ValidationReport report;
  report.nonnegative = std::all_of(rho0.begin(), rho0.end(), [](double r) { return r >= 0.0; });

  const std::size_t n = grid.size();
  const std::size_t margin = std::min(support_margin_cells, n);
  report.compact_support = support_margin_cells >= 1 && support_margin_cells < n;
  for (std::size_t i = n - margin; i < n; ++i) {
    if (rho0[i] != 0.0 || vel0[i] != 0.0) {
      report.compact_support = false;
    }
  }

  double h0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    h0 += grid.center(i) * vel0[i];
  }
  report.h0 = h0 * grid.dr();
  report.h0_positive = report.h0 > 0.0;
  report.nontrivial = std::any_of(rho0.begin(), rho0.end(), [](double r) { return r > 0.0; });
  report.eos_in_scope = cfg.eos_in_theorem_scope();
  report.force_in_scope = cfg.force_in_theorem_scope();
  report.theorem_applicable = report.admissible() && report.nontrivial && report.h0_positive &&
                              report.eos_in_scope && report.force_in_scope;
  return report;
}

}  // namespace radblow
