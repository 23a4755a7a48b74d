#include "radblow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "radblow/poisson.hpp"

namespace radblow {
namespace {

double minmod(double a, double b) {
  if (a * b <= 0.0) {
    return 0.0;
  }
  return std::abs(a) < std::abs(b) ? a : b;
}

std::size_t active_cells(const RadialGrid& grid, const NumericsConfig& num) {
  if (num.support_margin_cells >= grid.size()) {
    throw std::invalid_argument(fmt::format("support margin of {} cells leaves no active cells on a {}-cell grid",
                                            num.support_margin_cells, grid.size()));
  }
  return grid.size() - num.support_margin_cells;
}

// Active cells padded with two mirror cells at each end: the origin and the
// wall are both reflection points (rho even, V odd).
struct MirrorPadded {
  std::vector<double> rho;
  std::vector<double> vel;
};

MirrorPadded mirror_pad(const FluidState& state, std::size_t active) {
  MirrorPadded p;
  p.rho.resize(active + 4);
  p.vel.resize(active + 4);
  for (std::size_t i = 0; i < active; ++i) {
    p.rho[i + 2] = std::max(state.rho[i], 0.0);
    p.vel[i + 2] = state.vel[i];
  }
  const std::size_t second = active > 1 ? 1 : 0;
  p.rho[1] = p.rho[2];
  p.vel[1] = -p.vel[2];
  p.rho[0] = p.rho[2 + second];
  p.vel[0] = -p.vel[2 + second];
  p.rho[active + 2] = p.rho[active + 1];
  p.vel[active + 2] = -p.vel[active + 1];
  p.rho[active + 3] = p.rho[active + 1 - second];
  p.vel[active + 3] = -p.vel[active + 1 - second];
  return p;
}

}  // namespace

void NumericsConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) {
    throw std::invalid_argument("cfl must be in (0, 1]");
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw std::invalid_argument("t_end must be >= 0");
  }
  if (!(dt_floor > 0.0)) {
    throw std::invalid_argument("dt_floor must be > 0");
  }
  if (!(steepening_threshold > 0.0)) {
    throw std::invalid_argument("steepening_threshold must be > 0");
  }
  if (output_stride == 0) {
    throw std::invalid_argument("output_stride must be >= 1");
  }
  if (support_margin_cells == 0) {
    throw std::invalid_argument("support_margin_cells must be >= 1");
  }
  if (!(vacuum_floor_rel >= 0.0)) {
    throw std::invalid_argument("vacuum_floor_rel must be >= 0");
  }
  if (!(positivity_tol_rel >= 0.0)) {
    throw std::invalid_argument("positivity_tol_rel must be >= 0");
  }
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    if (!(checkpoints[k] >= 0.0) || (k > 0 && !(checkpoints[k] > checkpoints[k - 1]))) {
      throw std::invalid_argument("checkpoints must be nonnegative and strictly increasing");
    }
  }
}

Tendency rhs_eval(const FluidState& state, const ModelConfig& cfg, const RadialGrid& grid,
                  const NumericsConfig& num, double rho_scale) {
  check_shape(state.rho, grid, "rho");
  check_shape(state.vel, grid, "vel");
  const std::size_t n = grid.size();
  const std::size_t active = active_cells(grid, num);
  const double dr = grid.dr();
  const double floor = num.vacuum_floor_rel * rho_scale;
  // gamma = 1 needs log(rho) > -inf at the floor.
  const double enthalpy_floor = std::max(floor, std::numeric_limits<double>::min());

  Tendency out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  const MirrorPadded p = mirror_pad(state, active);

  std::vector<double> slope_rho(active + 4, 0.0);
  std::vector<double> slope_vel(active + 4, 0.0);
  for (std::size_t e = 1; e + 1 < active + 4; ++e) {
    slope_rho[e] = minmod(p.rho[e] - p.rho[e - 1], p.rho[e + 1] - p.rho[e]);
    slope_vel[e] = minmod(p.vel[e] - p.vel[e - 1], p.vel[e + 1] - p.vel[e]);
  }

  // Face j sits at r = j dr between active cells j-1 and j.
  std::vector<double> mass_flux(active + 1, 0.0);
  std::vector<double> vel_flux(active + 1, 0.0);
  for (std::size_t j = 0; j <= active; ++j) {
    const std::size_t el = j + 1;
    const std::size_t er = j + 2;
    const double rho_l = std::max(0.0, p.rho[el] + 0.5 * slope_rho[el]);
    const double rho_r = std::max(0.0, p.rho[er] - 0.5 * slope_rho[er]);
    const double v_l = p.vel[el] + 0.5 * slope_vel[el];
    const double v_r = p.vel[er] - 0.5 * slope_vel[er];
    const double c_l = sound_speed(std::max(rho_l, floor), cfg);
    const double c_r = sound_speed(std::max(rho_r, floor), cfg);
    const double a = std::max(std::abs(v_l) + c_l, std::abs(v_r) + c_r);

    if (j > 0 && j < active) {
      const double weight = std::pow(grid.face(j), cfg.dim - 1);
      mass_flux[j] = weight * (0.5 * (rho_l * v_l + rho_r * v_r) - 0.5 * a * (rho_r - rho_l));
    }
    const double h_l = enthalpy(std::max(rho_l, enthalpy_floor), cfg);
    const double h_r = enthalpy(std::max(rho_r, enthalpy_floor), cfg);
    vel_flux[j] = 0.5 * (0.5 * v_l * v_l + h_l + 0.5 * v_r * v_r + h_r) - 0.5 * a * (v_r - v_l);
  }

  std::vector<double> phi_r;
  if (cfg.delta != 0) {
    std::vector<double> rho(state.rho);
    for (double& r : rho) {
      r = std::max(r, 0.0);
    }
    phi_r = radial_field(rho, grid, cfg).phi_r;
  }

  for (std::size_t i = 0; i < active; ++i) {
    const double weight = std::pow(grid.center(i), cfg.dim - 1);
    out.rho[i] = -(mass_flux[i + 1] - mass_flux[i]) / (dr * weight);
    if (state.rho[i] > floor) {
      out.vel[i] = -(vel_flux[i + 1] - vel_flux[i]) / dr;
      if (!phi_r.empty()) {
        out.vel[i] += phi_r[i];
      }
    }
    if (!std::isfinite(out.rho[i]) || !std::isfinite(out.vel[i])) {
      throw NumericalBreakdown(
          fmt::format("non-finite tendency in cell {} (r = {})", i, grid.center(i)), i);
    }
  }
  return out;
}

TimeStep cfl_dt(const FluidState& state, const ModelConfig& cfg, const RadialGrid& grid,
                const NumericsConfig& num) {
  check_shape(state.rho, grid, "rho");
  const double cap = std::max(0.0, num.t_end - state.time);
  double speed = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    speed = std::max(speed, std::abs(state.vel[i]) + sound_speed(std::max(state.rho[i], 0.0), cfg));
  }
  if (speed == 0.0) {
    return {cap, false};
  }
  const double dt = num.cfl * grid.dr() / speed;
  return {std::min(dt, cap), dt < num.dt_floor};
}

FluidState apply_boundary(FluidState state, const NumericsConfig& num) {
  const std::size_t n = state.size();
  const std::size_t margin = std::min(num.support_margin_cells, n);
  for (std::size_t i = n - margin; i < n; ++i) {
    state.rho[i] = 0.0;
    state.vel[i] = 0.0;
  }
  return state;
}

GhostedField with_ghosts(const FluidState& state) {
  const std::size_t n = state.size();
  constexpr std::size_t g = GhostedField::kGhosts;
  GhostedField out;
  out.rho.assign(n + 2 * g, 0.0);
  out.vel.assign(n + 2 * g, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.rho[i + g] = state.rho[i];
    out.vel[i + g] = state.vel[i];
  }
  for (std::size_t k = 0; k < g; ++k) {
    const std::size_t src = std::min(k, n - 1);
    out.rho[g - 1 - k] = state.rho[src];
    out.vel[g - 1 - k] = -state.vel[src];
  }
  return out;
}

namespace {

void finish_stage(FluidState& s, const NumericsConfig& num, double floor) {
  s = apply_boundary(std::move(s), num);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.rho[i] <= floor) {
      s.vel[i] = 0.0;
    }
  }
}

}  // namespace

FluidState step(const FluidState& state, double dt, const ModelConfig& cfg, const RadialGrid& grid,
                const NumericsConfig& num, double rho_scale) {
  const std::size_t n = state.size();
  const double floor = num.vacuum_floor_rel * rho_scale;

  const Tendency k1 = rhs_eval(state, cfg, grid, num, rho_scale);
  FluidState stage = state;
  for (std::size_t i = 0; i < n; ++i) {
    stage.rho[i] = state.rho[i] + dt * k1.rho[i];
    stage.vel[i] = state.vel[i] + dt * k1.vel[i];
  }
  finish_stage(stage, num, floor);

  const Tendency k2 = rhs_eval(stage, cfg, grid, num, rho_scale);
  FluidState next = state;
  for (std::size_t i = 0; i < n; ++i) {
    next.rho[i] = 0.5 * state.rho[i] + 0.5 * (stage.rho[i] + dt * k2.rho[i]);
    next.vel[i] = 0.5 * state.vel[i] + 0.5 * (stage.vel[i] + dt * k2.vel[i]);
  }
  next.time = state.time + dt;
  finish_stage(next, num, floor);

  const double tolerance = num.positivity_tol_rel * rho_scale;
  for (std::size_t i = 0; i < n; ++i) {
    if (next.rho[i] < -tolerance) {
      throw PositivityViolation(
          fmt::format("density {} in cell {} at t = {} is below -{}", next.rho[i], i, next.time, tolerance), i);
    }
    if (next.rho[i] < 0.0) {
      next.rho[i] = 0.0;
    }
  }
  return next;
}

std::optional<Detection> detect_steepening(const FluidState& state, const RadialGrid& grid,
                                           const NumericsConfig& num) {
  const GradientPeak peak = max_velocity_gradient(state.vel, grid);
  if (peak.value > num.steepening_threshold) {
    return Detection{peak.value, peak.cell, peak.radius};
  }
  return std::nullopt;
}

RunResult run(std::span<const double> rho0, std::span<const double> vel0, const RadialGrid& grid,
              const ModelConfig& model, const NumericsConfig& num, const Tolerances& tolerances) {
  model.validate();
  num.validate();
  RunResult result;
  result.validation = validate_initial_data(rho0, vel0, grid, model, num.support_margin_cells);
  const auto& validation = result.validation;
  if (!validation.nonnegative) {
    throw ValidationError("initial density has negative values");
  }
  if (!validation.compact_support) {
    throw ValidationError(fmt::format(
        "initial data must vanish in the outer {} cells (compact support inside the wall)",
        num.support_margin_cells));
  }

  const double rho_scale = *std::max_element(rho0.begin(), rho0.end());
  FluidState state{0.0, {rho0.begin(), rho0.end()}, {vel0.begin(), vel0.end()}};

  auto& traj = result.trajectory;
  SeriesRecorder recorder(grid, model, validation.h0);
  const auto store = [&](const FluidState& s) {
    recorder.record(s);
    traj.snapshots.push_back(s);
  };
  store(state);

  std::size_t next_checkpoint = 0;
  const auto take_checkpoints = [&](const FluidState& s) {
    while (next_checkpoint < num.checkpoints.size() && num.checkpoints[next_checkpoint] <= s.time) {
      traj.checkpoints.push_back(s);
      ++next_checkpoint;
    }
  };
  take_checkpoints(state);

  bool stored_last = true;
  while (true) {
    if (state.time >= num.t_end) {
      traj.termination = Termination::reached_t_end;
      break;
    }
    const TimeStep ts = cfl_dt(state, model, grid, num);
    if (ts.collapsed) {
      traj.termination = Termination::dt_collapsed;
      traj.t_detect = state.time;
      break;
    }
    double dt = ts.dt;
    double land_on = num.t_end;
    if (next_checkpoint < num.checkpoints.size() && num.checkpoints[next_checkpoint] < num.t_end &&
        num.checkpoints[next_checkpoint] - state.time <= dt) {
      land_on = num.checkpoints[next_checkpoint];
      dt = land_on - state.time;
    }
    const bool lands = dt == land_on - state.time;

    try {
      FluidState next = step(state, dt, model, grid, num, rho_scale);
      if (lands) {
        next.time = land_on;
      }
      state = std::move(next);
    } catch (const PositivityViolation&) {
      traj.termination = Termination::positivity_violated;
      break;
    }
    ++traj.steps;
    stored_last = false;
    take_checkpoints(state);

    if (const auto det = detect_steepening(state, grid, num)) {
      traj.termination = Termination::steepening_detected;
      traj.t_detect = state.time;
      traj.detection = det;
      break;
    }
    if (traj.steps % num.output_stride == 0) {
      store(state);
      stored_last = true;
    }
  }
  if (!stored_last) {
    store(state);
  }

  result.series = std::move(recorder).finish();
  AssessmentInput input{model,
                        validation.h0,
                        validation.theorem_applicable,
                        traj.termination,
                        traj.t_detect,
                        tolerances};
  result.report = assess(result.series, input);
  return result;
}

}  // namespace radblow
