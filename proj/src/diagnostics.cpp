#include "radblow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "radblow/poisson.hpp"

namespace radblow {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double functional_H(const FluidState& state, const RadialGrid& grid) {
  check_shape(state.vel, grid, "vel");
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sum += grid.center(i) * state.vel[i];
  }
  return sum * grid.dr();
}

double blowup_bound(double h0, double radius) {
  if (!(h0 > 0.0)) {
    throw DomainError(fmt::format("blowup bound needs H0 > 0 (got {})", h0));
  }
  return radius * radius * radius / (2.0 * h0);
}

double envelope(double t, double h0, double radius) {
  const double t_bound = blowup_bound(h0, radius);
  if (t < 0.0 || t >= t_bound) {
    throw DomainError(fmt::format("envelope diverges at T = {}; t = {} is outside [0, T)", t_bound, t));
  }
  const double r3 = radius * radius * radius;
  return -r3 * h0 / (2.0 * h0 * t - r3);
}

std::vector<double> riccati_residual(std::span<const double> h_series,
                                     std::span<const double> times, double radius) {
  if (h_series.size() != times.size()) {
    throw ShapeError("H series and times differ in length");
  }
  if (times.size() < 2) {
    throw DomainError("riccati_residual needs at least two samples");
  }
  const double r3 = radius * radius * radius;
  std::vector<double> out(times.size() - 1);
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double dt = times[k + 1] - times[k];
    if (!(dt > 0.0)) {
      throw DomainError(fmt::format("riccati_residual: times not increasing at sample {}", k + 1));
    }
    const double mid = 0.5 * (h_series[k] + h_series[k + 1]);
    out[k] = (h_series[k + 1] - h_series[k]) / dt - 2.0 * mid * mid / r3;
  }
  return out;
}

double cauchy_schwarz_gap(const FluidState& state, const RadialGrid& grid, double radius) {
  check_shape(state.vel, grid, "vel");
  double v2 = 0.0;
  double h = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.center(i);
    const double v = state.vel[i];
    v2 += 2.0 * r * v * v;
    h += r * v;
  }
  v2 *= grid.dr();
  h *= grid.dr();
  return v2 - 4.0 * h * h / (radius * radius);
}

double mass(const FluidState& state, const RadialGrid& grid, const ModelConfig& cfg) {
  check_shape(state.rho, grid, "rho");
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sum += state.rho[i] * std::pow(grid.center(i), cfg.dim - 1);
  }
  return alpha(cfg.dim) * sum * grid.dr();
}

EnergyCondition energy_condition(const FluidState& state, const RadialGrid& grid,
                                 const ModelConfig& cfg) {
  check_shape(state.rho, grid, "rho");
  check_shape(state.vel, grid, "vel");
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double rho = state.rho[i];
    const double v = state.vel[i];
    sum += (rho * v * v + 2.0 * pressure(rho, cfg)) * std::pow(grid.center(i), cfg.dim - 1);
  }
  EnergyCondition out;
  out.lhs = 2.0 * alpha(cfg.dim) * sum * grid.dr();
  const double m = mass(state, grid, cfg);
  out.mass_squared = m * m;
  out.satisfied = out.lhs < out.mass_squared;
  return out;
}

GradientPeak max_velocity_gradient(std::span<const double> vel, const RadialGrid& grid) {
  check_shape(vel, grid, "vel");
  const std::size_t n = vel.size();
  GradientPeak peak;
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i == 0 ? -vel[0] : vel[i - 1];
    const double right = i + 1 == n ? 0.0 : vel[i + 1];
    const double g = std::abs(right - left) / (2.0 * grid.dr());
    if (g > peak.value) {
      peak = {g, i, grid.center(i)};
    }
  }
  return peak;
}

SeriesRecorder::SeriesRecorder(const RadialGrid& grid, const ModelConfig& model, double h0)
    : grid_(&grid), model_(model), h0_(h0) {}

void SeriesRecorder::record(const FluidState& state) {
  const auto& grid = *grid_;
  series_.times.push_back(state.time);
  series_.h.push_back(functional_H(state, grid));
  series_.mass.push_back(mass(state, grid, model_));
  series_.energy_lhs.push_back(energy_condition(state, grid, model_).lhs);
  series_.cauchy_gap.push_back(cauchy_schwarz_gap(state, grid, model_.support_radius));
  series_.max_abs_dvdr.push_back(max_velocity_gradient(state.vel, grid).value);
  double v2 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    v2 += 2.0 * grid.center(i) * state.vel[i] * state.vel[i];
  }
  series_.v2_weighted.push_back(v2 * grid.dr());
}

DiagnosticsSeries SeriesRecorder::finish() && {
  complete_series(series_, h0_, model_.support_radius);
  return std::move(series_);
}

void complete_series(DiagnosticsSeries& series, double h0, double radius) {
  const std::size_t n = series.size();
  series.riccati_residual.assign(n, kNaN);
  if (n >= 2) {
    const auto res = riccati_residual(series.h, series.times, radius);
    std::copy(res.begin(), res.end(), series.riccati_residual.begin());
  }
  series.envelope.assign(n, kNaN);
  if (h0 > 0.0) {
    const double t_bound = blowup_bound(h0, radius);
    for (std::size_t k = 0; k < n; ++k) {
      if (series.times[k] >= 0.0 && series.times[k] < t_bound) {
        series.envelope[k] = envelope(series.times[k], h0, radius);
      }
    }
  }
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::reached_t_end:
      return "reached_t_end";
    case Termination::steepening_detected:
      return "steepening_detected";
    case Termination::dt_collapsed:
      return "dt_collapsed";
    case Termination::positivity_violated:
      return "positivity_violated";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::confirmed:
      return "confirmed";
    case Verdict::pending:
      return "pending";
    case Verdict::violated:
      return "violated";
    case Verdict::not_applicable:
      return "not_applicable";
  }
  return "unknown";
}

RunReport assess(const DiagnosticsSeries& series, const AssessmentInput& input) {
  RunReport report;
  report.h0 = input.h0;
  report.t_detect = input.t_detect;
  report.termination = input.termination;
  report.theorem_applicable = input.theorem_applicable;
  report.tolerances = input.tolerances;
  report.t_final = series.size() > 0 ? series.times.back() : 0.0;
  const double radius = input.model.support_radius;
  if (input.h0 > 0.0) {
    report.t_bound = blowup_bound(input.h0, radius);
  }

  if (!input.model.eos_in_theorem_scope()) {
    report.notes.emplace_back("outside theorem scope: gamma = 1 with pressure");
  }
  if (!input.model.force_in_theorem_scope()) {
    report.notes.emplace_back("outside theorem scope: attractive force (delta = -1)");
  }
  if (!(input.h0 > 0.0)) {
    report.notes.emplace_back("outside theorem scope: H0 <= 0");
  }

  const auto& tol = input.tolerances;
  const double detect = input.t_detect.value_or(std::numeric_limits<double>::infinity());
  double h_max = 0.0;
  for (const double h : series.h) {
    h_max = std::max(h_max, std::abs(h));
  }
  report.min_riccati_residual = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double t = series.times[k];
    const double scale = 1.0 + series.v2_weighted.at(k);
    if (series.cauchy_gap[k] < -tol.cauchy_rel * scale) {
      ++report.cauchy_breaches;
    }
    if (t >= detect) {
      continue;
    }
    if (std::isfinite(series.envelope[k]) &&
        series.h[k] < series.envelope[k] - tol.envelope_rel * series.envelope[k]) {
      ++report.envelope_breaches;
    }
    if (k + 1 < series.size() && series.times[k + 1] < detect) {
      if (series.h[k + 1] < series.h[k] - tol.h_monotone_rel * h_max) {
        ++report.monotonicity_breaches;
      }
      report.min_riccati_residual =
          std::min(report.min_riccati_residual, series.riccati_residual[k]);
    }
  }
  if (!std::isfinite(report.min_riccati_residual)) {
    report.min_riccati_residual = 0.0;
  }
  if (series.size() > 0 && series.mass.front() > 0.0) {
    const double m0 = series.mass.front();
    for (const double m : series.mass) {
      report.mass_drift = std::max(report.mass_drift, std::abs(m - m0) / m0);
    }
  }

  if (!input.theorem_applicable || !report.t_bound) {
    report.verdict = Verdict::not_applicable;
  } else if (input.t_detect) {
    report.verdict = *input.t_detect <= *report.t_bound ? Verdict::confirmed : Verdict::violated;
  } else if (report.t_final >= *report.t_bound) {
    report.verdict = Verdict::violated;
  } else {
    report.verdict = Verdict::pending;
  }
  return report;
}

}  // namespace radblow
