#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "radblow/model.hpp"

namespace radblow {

/// H(t) = int_0^R r V dr by the midpoint rule on cell centres.
double functional_H(const FluidState& state, const RadialGrid& grid);

/// T = R^3 / (2 H0). Throws DomainError when H0 <= 0.
double blowup_bound(double h0, double radius);

/// Lower barrier -R^3 H0 / (2 H0 t - R^3); equals H0 at t = 0 and diverges at
/// T. Throws DomainError for H0 <= 0 or t outside [0, T).
double envelope(double t, double h0, double radius);

/// residual_k = (H_{k+1} - H_k)/(t_{k+1} - t_k) - 2 Hmid^2 / R^3 with Hmid the
/// mean of the two samples. Returns one value per interval.
std::vector<double> riccati_residual(std::span<const double> h_series,
                                     std::span<const double> times, double radius);

/// int_0^R V^2 2r dr - 4 H^2 / R^2. Nonnegative by Cauchy-Schwarz; the discrete
/// midpoint form is nonnegative exactly (up to roundoff).
double cauchy_schwarz_gap(const FluidState& state, const RadialGrid& grid, double radius);

/// alpha(N) sum_i rho_i r_i^(N-1) dr.
double mass(const FluidState& state, const RadialGrid& grid, const ModelConfig& cfg);

struct EnergyCondition {
  double lhs = 0.0;           // 2 alpha(N) sum (rho V^2 + 2P) r^(N-1) dr
  double mass_squared = 0.0;  // M^2
  bool satisfied = false;     // lhs < M^2
  double margin() const { return mass_squared - lhs; }
};

/// Informational monitor of the sufficient energy condition from prior work.
EnergyCondition energy_condition(const FluidState& state, const RadialGrid& grid,
                                 const ModelConfig& cfg);

/// max_i |(V_{i+1} - V_{i-1}) / (2 dr)|, with V odd through the origin and
/// zero beyond the last cell.
struct GradientPeak {
  double value = 0.0;
  std::size_t cell = 0;
  double radius = 0.0;
};
GradientPeak max_velocity_gradient(std::span<const double> vel, const RadialGrid& grid);

/// One row per stored stride.
struct DiagnosticsSeries {
  std::vector<double> times;
  std::vector<double> h;
  std::vector<double> mass;
  std::vector<double> energy_lhs;
  std::vector<double> riccati_residual;  // forward difference; NaN on the last row
  std::vector<double> envelope;          // NaN where undefined (H0 <= 0 or t >= T)
  std::vector<double> cauchy_gap;
  std::vector<double> max_abs_dvdr;
  std::vector<double> v2_weighted;  // int V^2 2r dr, scale for the Cauchy-Schwarz tolerance

  std::size_t size() const { return times.size(); }
};

/// Accumulates snapshot diagnostics during a run; `finish` fills the
/// interval-based columns.
class SeriesRecorder {
 public:
  SeriesRecorder(const RadialGrid& grid, const ModelConfig& model, double h0);

  void record(const FluidState& state);
  DiagnosticsSeries finish() &&;

 private:
  const RadialGrid* grid_;
  ModelConfig model_;
  double h0_;
  DiagnosticsSeries series_;
};

/// Fills riccati_residual and envelope from the times and H columns.
void complete_series(DiagnosticsSeries& series, double h0, double radius);

enum class Termination { reached_t_end, steepening_detected, dt_collapsed, positivity_violated };
enum class Verdict { confirmed, pending, violated, not_applicable };

std::string_view to_string(Termination t);
std::string_view to_string(Verdict v);

/// Tolerances attached to every report.
struct Tolerances {
  double envelope_rel = 1e-3;         // H_k >= (1 - tol) envelope(t_k)
  double cauchy_rel = 1e-8;           // gap >= -tol (1 + int V^2 2r dr)
  double h_monotone_rel = 1e-6;       // H_{k+1} >= H_k - tol max|H|
  double mass_drift_rel = 1e-10;      // |M - M0| <= tol M0
  bool operator==(const Tolerances&) const = default;
};

struct RunReport {
  std::optional<double> t_bound;
  std::optional<double> t_detect;
  double t_final = 0.0;
  double h0 = 0.0;
  bool theorem_applicable = false;
  Verdict verdict = Verdict::not_applicable;
  Termination termination = Termination::reached_t_end;
  Tolerances tolerances;

  // Proof-chain checks over the stored strides before detection.
  std::size_t envelope_breaches = 0;
  std::size_t cauchy_breaches = 0;
  std::size_t monotonicity_breaches = 0;
  double min_riccati_residual = 0.0;
  double mass_drift = 0.0;  // max relative |M_k - M_0| / M_0
  std::vector<std::string> notes;
};

struct AssessmentInput {
  ModelConfig model;
  double h0 = 0.0;
  bool theorem_applicable = false;
  Termination termination = Termination::reached_t_end;
  std::optional<double> t_detect;
  Tolerances tolerances;
};

/// Verdict and proof-chain bookkeeping for a finished series:
///   not_applicable  theorem hypotheses fail;
///   confirmed       a singularity was detected at or before T;
///   violated        T was passed without detection (the falsification alarm);
///   pending         the series ends before T without detection.
RunReport assess(const DiagnosticsSeries& series, const AssessmentInput& input);

}  // namespace radblow
