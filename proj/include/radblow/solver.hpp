#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "radblow/diagnostics.hpp"
#include "radblow/model.hpp"

namespace radblow {

struct NumericsConfig {
  double cfl = 0.4;
  double t_end = 10.0;
  double dt_floor = 1e-10;
  double steepening_threshold = 50.0;  // on max |dV/dr|, units 1/time
  std::size_t output_stride = 10;      // steps between stored snapshots
  std::size_t support_margin_cells = 2;
  std::vector<double> checkpoints;  // times at which full fields are kept
  double vacuum_floor_rel = 1e-12;  // flux-only density floor, relative to max rho0
  double positivity_tol_rel = 1e-14;

  void validate() const;
  bool operator==(const NumericsConfig&) const = default;
};

/// Non-finite tendency; carries the first offending cell.
class NumericalBreakdown : public std::runtime_error {
 public:
  NumericalBreakdown(const std::string& what, std::size_t cell)
      : std::runtime_error(what), cell_(cell) {}
  std::size_t cell() const { return cell_; }

 private:
  std::size_t cell_;
};

/// Density went below -positivity_tol_rel * max(rho0) after a full step.
class PositivityViolation : public std::runtime_error {
 public:
  PositivityViolation(const std::string& what, std::size_t cell)
      : std::runtime_error(what), cell_(cell) {}
  std::size_t cell() const { return cell_; }

 private:
  std::size_t cell_;
};

/// Rejected initial data (negative density or support reaching the wall margin).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Tendency {
  std::vector<double> rho;  // d rho / dt
  std::vector<double> vel;  // d V / dt
};

/// Semi-discrete right-hand side of
///   rho_t + r^(1-N) (r^(N-1) rho V)_r = 0,
///   V_t + (V^2/2 + h(rho))_r = phi_r,
/// on the active cells [0, n - margin). Interface fluxes are local
/// Lax-Friedrichs on minmod-limited primitives. The origin is a symmetry
/// point (rho even, V odd) and the face between the active cells and the
/// margin is a solid wall (mirror state, zero mass flux). The mass update is
/// written for r^(N-1) rho so that the weighted sum telescopes. Cells at or
/// below the vacuum floor keep dV/dt = 0. `rho_scale` is max(rho0).
Tendency rhs_eval(const FluidState& state, const ModelConfig& cfg, const RadialGrid& grid,
                  const NumericsConfig& num, double rho_scale);

struct TimeStep {
  double dt = 0.0;
  bool collapsed = false;  // CFL step fell below dt_floor
};

/// dt = cfl dr / max(|V| + c), capped by t_end - t. Vacuum returns the cap.
TimeStep cfl_dt(const FluidState& state, const ModelConfig& cfg, const RadialGrid& grid,
                const NumericsConfig& num);

/// Zeroes the margin cells next to r = R.
FluidState apply_boundary(FluidState state, const NumericsConfig& num);

/// Field padded with two ghost cells on each side: reflected through the
/// origin (rho even, V odd) on the left and zero beyond r = R on the right.
struct GhostedField {
  static constexpr std::size_t kGhosts = 2;
  std::vector<double> rho;
  std::vector<double> vel;
  double rho_at(std::ptrdiff_t i) const { return rho[static_cast<std::size_t>(i + kGhosts)]; }
  double vel_at(std::ptrdiff_t i) const { return vel[static_cast<std::size_t>(i + kGhosts)]; }
};
GhostedField with_ghosts(const FluidState& state);

/// Two-stage SSP Runge-Kutta step. Boundary conditions are applied after each
/// stage. Throws PositivityViolation; densities inside the tolerance band are
/// set to zero.
FluidState step(const FluidState& state, double dt, const ModelConfig& cfg, const RadialGrid& grid,
                const NumericsConfig& num, double rho_scale);

struct Detection {
  double gradient = 0.0;
  std::size_t cell = 0;
  double radius = 0.0;
};

/// Fires when max |(V_{i+1} - V_{i-1}) / (2 dr)| exceeds the threshold.
std::optional<Detection> detect_steepening(const FluidState& state, const RadialGrid& grid,
                                           const NumericsConfig& num);

struct Trajectory {
  std::vector<FluidState> snapshots;    // every output_stride steps, plus first and last
  std::vector<FluidState> checkpoints;  // states at the requested checkpoint times
  Termination termination = Termination::reached_t_end;
  std::optional<double> t_detect;
  std::optional<Detection> detection;
  std::size_t steps = 0;
};

struct RunResult {
  Trajectory trajectory;
  DiagnosticsSeries series;
  RunReport report;
  ValidationReport validation;
};

/// Advances the data to t_end or a termination event, recording diagnostics
/// at every stored snapshot. Blowup is operationally either a steepening
/// threshold crossing or a collapse of the CFL step below dt_floor.
/// Inadmissible data throws ValidationError before any step is taken.
RunResult run(std::span<const double> rho0, std::span<const double> vel0, const RadialGrid& grid,
              const ModelConfig& model, const NumericsConfig& num,
              const Tolerances& tolerances = {});

}  // namespace radblow
