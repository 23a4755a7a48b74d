#include "radblow/characteristics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>
#include <fmt/format.h>

namespace radblow {
namespace {

struct Extremum {
  double r;
  double value;
};

double derivative_at(const VelocityProfile& v0, double r, double h) {
  if (v0.derivative) {
    return v0.derivative(r);
  }
  // Second-order one-sided stencils at the ends of [0, radius].
  if (r - h < 0.0) {
    return (-3.0 * v0.value(r) + 4.0 * v0.value(r + h) - v0.value(r + 2.0 * h)) / (2.0 * h);
  }
  if (r + h > v0.radius) {
    return (3.0 * v0.value(r) - 4.0 * v0.value(r - h) + v0.value(r - 2.0 * h)) / (2.0 * h);
  }
  return (v0.value(r + h) - v0.value(r - h)) / (2.0 * h);
}

// Minimum of sign * V0' over [0, radius].
Extremum scan_derivative(const VelocityProfile& v0, std::size_t base_samples, double sign) {
  if (!v0.value) {
    throw DomainError("velocity profile has no value function");
  }
  const std::size_t n = 10 * std::max<std::size_t>(base_samples, 1);
  const double h = v0.radius / static_cast<double>(n);
  Extremum best{0.0, std::numeric_limits<double>::infinity()};
  std::size_t best_k = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double r = static_cast<double>(k) * h;
    const double d = sign * derivative_at(v0, r, h);
    if (!std::isfinite(d)) {
      throw DomainError(fmt::format("non-finite velocity derivative at r = {}", r));
    }
    if (d < best.value) {
      best = {r, d};
      best_k = k;
    }
  }
  if (!v0.derivative) {
    return best;
  }
  const double lo = static_cast<double>(best_k == 0 ? 0 : best_k - 1) * h;
  const double hi = static_cast<double>(std::min(best_k + 1, n)) * h;
  const auto [r, value] = boost::math::tools::brent_find_minima(
      [&](double x) { return sign * v0.derivative(x); }, lo, hi, std::numeric_limits<double>::digits);
  if (value < best.value) {
    best = {r, value};
  }
  return best;
}

}  // namespace

double min_velocity_derivative(const VelocityProfile& v0, std::size_t base_samples) {
  return scan_derivative(v0, base_samples, 1.0).value;
}

double max_abs_velocity_derivative(const VelocityProfile& v0, std::size_t base_samples) {
  const double lowest = scan_derivative(v0, base_samples, 1.0).value;
  const double highest = -scan_derivative(v0, base_samples, -1.0).value;
  return std::max(std::abs(lowest), std::abs(highest));
}

std::optional<double> first_crossing_time(const VelocityProfile& v0, std::size_t base_samples) {
  const double slope = min_velocity_derivative(v0, base_samples);
  if (slope >= 0.0) {
    return std::nullopt;
  }
  return -1.0 / slope;
}

CharField characteristic_solution(const VelocityProfile& v0, double t,
                                  std::span<const double> r0_samples) {
  if (t < 0.0) {
    throw DomainError("characteristic_solution: negative time");
  }
  if (const auto t_star = first_crossing_time(v0); t_star && t >= *t_star) {
    throw CrossingError(
        fmt::format("characteristics cross at t* = {}; map not invertible at t = {}", *t_star, t));
  }
  CharField field;
  field.time = t;
  field.r0.assign(r0_samples.begin(), r0_samples.end());
  field.position.reserve(r0_samples.size());
  field.velocity.reserve(r0_samples.size());
  for (const double r0 : r0_samples) {
    const double v = v0.value(r0);
    field.velocity.push_back(v);
    field.position.push_back(r0 + t * v);
  }
  return field;
}

double velocity_at(const VelocityProfile& v0, double t, double r) {
  if (t == 0.0) {
    return v0.value(r);
  }
  const auto map = [&](double r0) { return r0 + t * v0.value(r0) - r; };
  const double f_lo = map(0.0);
  const double f_hi = map(v0.radius);
  if (f_lo == 0.0) {
    return v0.value(0.0);
  }
  if (f_hi == 0.0) {
    return v0.value(v0.radius);
  }
  if (f_lo > 0.0 || f_hi < 0.0) {
    throw DomainError(fmt::format("r = {} is outside the image of the characteristic map", r));
  }
  std::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      map, 0.0, v0.radius, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(52), iterations);
  return v0.value(0.5 * (a + b));
}

double density_along_characteristic(double rho0_at_seed, std::span<const double> divu,
                                    std::span<const double> times) {
  if (rho0_at_seed < 0.0) {
    throw DomainError("density_along_characteristic: negative seed density");
  }
  if (divu.size() != times.size()) {
    throw ShapeError("divergence and time samples differ in length");
  }
  if (rho0_at_seed == 0.0) {
    return 0.0;
  }
  double integral = 0.0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) {
      throw DomainError("density_along_characteristic: times must increase");
    }
    integral += 0.5 * (divu[k] + divu[k - 1]) * (times[k] - times[k - 1]);
  }
  if (!std::isfinite(integral)) {
    throw DomainError("density_along_characteristic: non-finite divergence");
  }
  return rho0_at_seed * std::exp(-integral);
}

EmdenTrajectory emden_boundary_ode(double r0, double mass, const ModelConfig& cfg, double t_end,
                                   double dt) {
  if (!(r0 > 0.0)) {
    throw DomainError("emden_boundary_ode: R0 must be > 0");
  }
  if (mass < 0.0) {
    throw DomainError("emden_boundary_ode: mass must be >= 0");
  }
  if (!(dt > 0.0) || t_end < 0.0) {
    throw DomainError("emden_boundary_ode: need dt > 0 and t_end >= 0");
  }

  using State = std::array<double, 2>;  // {R, R'}
  const double forcing = cfg.delta * mass;
  const int power = cfg.dim - 1;
  const auto rhs = [forcing, power](const State& x, State& dxdt, double) {
    dxdt[0] = x[1];
    dxdt[1] = forcing / std::pow(x[0], power);
  };

  boost::numeric::odeint::runge_kutta4<State> stepper;
  EmdenTrajectory out;
  State x{r0, 0.0};
  double t = 0.0;
  out.time.push_back(t);
  out.radius.push_back(x[0]);
  out.speed.push_back(x[1]);

  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_next = std::min(t_end, static_cast<double>(k) * dt);
    stepper.do_step(rhs, x, t, t_next - t);
    t = t_next;
    if (!(x[0] > 0.0) || !std::isfinite(x[0]) || !std::isfinite(x[1])) {
      out.collapsed = true;
      break;
    }
    out.time.push_back(t);
    out.radius.push_back(x[0]);
    out.speed.push_back(x[1]);
  }
  return out;
}

double emden_energy(double radius, double speed, double mass, const ModelConfig& cfg) {
  const double dm = cfg.delta * mass;
  double potential = 0.0;
  switch (cfg.dim) {
    case 1:
      potential = -dm * radius;
      break;
    case 2:
      potential = -dm * std::log(radius);
      break;
    default:
      potential = dm / ((cfg.dim - 2) * std::pow(radius, cfg.dim - 2));
      break;
  }
  return 0.5 * speed * speed + potential;
}

}  // namespace radblow
