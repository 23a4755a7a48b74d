#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "radblow/model.hpp"

namespace radblow {

/// Thrown when the characteristic map is asked for a time at or after the
/// first crossing, where it is no longer invertible.
class CrossingError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Initial radial velocity on [0, radius]. `derivative` may be left empty, in
/// which case it is estimated by central differences.
struct VelocityProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double radius = 1.0;
};

/// Characteristic field of V_t + V V_r = 0 at one time.
struct CharField {
  double time = 0.0;
  std::vector<double> r0;        // seed radii
  std::vector<double> position;  // r(t; r0) = r0 + t V0(r0)
  std::vector<double> velocity;  // V0(r0), carried unchanged
};

/// Smallest value of V0' on [0, radius]. With an analytic derivative the
/// profile is sampled at 10 * base_samples + 1 points and the best sample is
/// polished with Brent's method; otherwise central differences are taken on
/// the same refined sample grid (second-order one-sided at the two ends).
/// Non-finite samples throw DomainError.
double min_velocity_derivative(const VelocityProfile& v0, std::size_t base_samples = 1000);

/// Largest |V0'| on [0, radius], same sampling rules.
double max_abs_velocity_derivative(const VelocityProfile& v0, std::size_t base_samples = 1000);

/// Gradient-catastrophe time t* = -1 / min V0' of the pressureless transport,
/// or nullopt when V0 is nondecreasing.
std::optional<double> first_crossing_time(const VelocityProfile& v0,
                                          std::size_t base_samples = 1000);

/// Straight characteristics of the pressureless Euler system. Throws
/// CrossingError for t >= t*, DomainError for t < 0.
CharField characteristic_solution(const VelocityProfile& v0, double t,
                                  std::span<const double> r0_samples);

/// V(t, r) of the pressureless solution, by inverting the characteristic map.
/// Valid for 0 <= t < t* and r inside the image of [0, radius].
double velocity_at(const VelocityProfile& v0, double t, double r);

/// rho0 exp(-int_0^t div u) along one characteristic, the integral taken by
/// the trapezoid rule on the supplied samples.
double density_along_characteristic(double rho0_at_seed, std::span<const double> divu,
                                    std::span<const double> times);

struct EmdenTrajectory {
  std::vector<double> time;
  std::vector<double> radius;
  std::vector<double> speed;
  bool collapsed = false;
};

/// Integrates R'' = delta M / R^(N-1), R(0) = R0, R'(0) = 0 over [0, t_end]
/// with classical RK4 at step dt. Stops with `collapsed` set if R reaches 0.
EmdenTrajectory emden_boundary_ode(double r0, double mass, const ModelConfig& cfg, double t_end,
                                   double dt);

/// (1/2) R'^2 + U(R) with -U'(R) = delta M / R^(N-1); constant along exact
/// trajectories.
double emden_energy(double radius, double speed, double mass, const ModelConfig& cfg);

}  // namespace radblow
