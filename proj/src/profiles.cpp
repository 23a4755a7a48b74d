#include "radblow/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace radblow {
namespace {

struct Coefficients {
  std::vector<double> vel;  // c_k
  std::vector<double> rho;  // d_k
};

double unit_interval(std::mt19937_64& gen) {
  // 53 high bits, so the mapping does not depend on the standard library.
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

Coefficients draw(const InitialProfileSpec& spec) {
  std::mt19937_64 gen(spec.seed);
  Coefficients c;
  for (int k = 0; k < spec.modes; ++k) {
    c.vel.push_back(2.0 * unit_interval(gen) - 1.0);
    c.rho.push_back(2.0 * unit_interval(gen) - 1.0);
  }
  return c;
}

double bump(double x, double p) {
  const double base = 1.0 - x * x;
  return base > 0.0 ? std::pow(base, p) : 0.0;
}

double density(const InitialProfileSpec& spec, const Coefficients& coef, double r, double radius) {
  const double x = r / radius;
  switch (spec.family) {
    case ProfileFamily::polynomial_bump:
      return spec.rho_amplitude * bump(x, spec.rho_power);
    case ProfileFamily::gaussian_truncated: {
      const double g = std::exp(-(r / spec.width) * (r / spec.width));
      const double g1 = std::exp(-(radius / spec.width) * (radius / spec.width));
      return spec.rho_amplitude * std::max(0.0, g - g1);
    }
    case ProfileFamily::random_smooth: {
      double mod = 1.0;
      for (std::size_t k = 1; k <= coef.rho.size(); ++k) {
        const double kk = static_cast<double>(k);
        mod += coef.rho[k - 1] * std::cos(kk * std::numbers::pi * x) / (2.0 * kk * kk);
      }
      return spec.rho_amplitude * bump(x, spec.rho_power) * mod;
    }
  }
  return 0.0;
}

}  // namespace

std::string_view to_string(ProfileFamily f) {
  switch (f) {
    case ProfileFamily::polynomial_bump:
      return "polynomial_bump";
    case ProfileFamily::gaussian_truncated:
      return "gaussian_truncated";
    case ProfileFamily::random_smooth:
      return "random_smooth";
  }
  return "unknown";
}

ProfileFamily parse_family(std::string_view name) {
  for (const auto f : {ProfileFamily::polynomial_bump, ProfileFamily::gaussian_truncated,
                       ProfileFamily::random_smooth}) {
    if (name == to_string(f)) {
      return f;
    }
  }
  throw std::invalid_argument(fmt::format(
      "family must be polynomial_bump, gaussian_truncated or random_smooth (got '{}')", name));
}

void InitialProfileSpec::validate() const {
  if (!(rho_amplitude >= 0.0) || !std::isfinite(rho_amplitude)) {
    throw std::invalid_argument("rho_amplitude must be finite and >= 0");
  }
  if (!(rho_power >= 1.0) || !std::isfinite(rho_power)) {
    throw std::invalid_argument("rho_power must be finite and >= 1");
  }
  if (!std::isfinite(vel_amplitude)) {
    throw std::invalid_argument("vel_amplitude must be finite");
  }
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("width must be finite and > 0");
  }
  if (modes < 1) {
    throw std::invalid_argument("modes must be >= 1");
  }
}

VelocityProfile velocity_profile(const InitialProfileSpec& spec, double radius) {
  const double a = spec.vel_amplitude;
  const double R = radius;
  VelocityProfile p;
  p.radius = R;
  switch (spec.family) {
    case ProfileFamily::polynomial_bump:
      p.value = [a, R](double r) { return a * r * (1.0 - r / R); };
      p.derivative = [a, R](double r) { return a * (1.0 - 2.0 * r / R); };
      break;
    case ProfileFamily::gaussian_truncated: {
      const double w = spec.width;
      const double g1 = std::exp(-(R / w) * (R / w));
      p.value = [a, w, g1](double r) { return a * r * (std::exp(-(r / w) * (r / w)) - g1); };
      p.derivative = [a, w, g1](double r) {
        const double g = std::exp(-(r / w) * (r / w));
        return a * (g - g1 - 2.0 * r * r / (w * w) * g);
      };
      break;
    }
    case ProfileFamily::random_smooth: {
      const auto coef = std::make_shared<const std::vector<double>>(draw(spec).vel);
      p.value = [a, R, coef](double r) {
        double s = 0.0;
        for (std::size_t k = 1; k <= coef->size(); ++k) {
          const double kk = static_cast<double>(k);
          s += (*coef)[k - 1] * std::sin(kk * std::numbers::pi * r / R) / (kk * kk);
        }
        return a * R * s;
      };
      p.derivative = [a, R, coef](double r) {
        double s = 0.0;
        for (std::size_t k = 1; k <= coef->size(); ++k) {
          const double kk = static_cast<double>(k);
          s += (*coef)[k - 1] * std::numbers::pi * std::cos(kk * std::numbers::pi * r / R) / kk;
        }
        return a * s;
      };
      break;
    }
  }
  return p;
}

InitialData build_initial_profile(const InitialProfileSpec& spec, const RadialGrid& grid,
                                  std::size_t support_margin_cells) {
  spec.validate();
  const std::size_t n = grid.size();
  if (support_margin_cells >= n) {
    throw std::invalid_argument(fmt::format(
        "support margin of {} cells leaves no active cells on a {}-cell grid", support_margin_cells, n));
  }
  const std::size_t active = n - support_margin_cells;
  const double R = grid.radius();
  const auto coef = draw(spec);
  const auto v0 = velocity_profile(spec, R);

  InitialData data;
  data.rho.assign(n, 0.0);
  data.vel.assign(n, 0.0);
  for (std::size_t i = 0; i < active; ++i) {
    const double r = grid.center(i);
    data.rho[i] = density(spec, coef, r, R);
    data.vel[i] = v0.value(r);
  }
  for (std::size_t i = 0; i < n; ++i) {
    data.h0 += grid.center(i) * data.vel[i];
  }
  data.h0 *= grid.dr();
  if (!(data.h0 > 0.0)) {
    data.warnings.push_back(
        fmt::format("H0 = {:.17g} is not positive; blowup bound not applicable", data.h0));
  }
  return data;
}

double auto_steepening_threshold(const InitialProfileSpec& spec, double radius) {
  const double slope = max_abs_velocity_derivative(velocity_profile(spec, radius));
  return slope > 0.0 ? 50.0 * slope / radius : 50.0 / radius;
}

}  // namespace radblow
