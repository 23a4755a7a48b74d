#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "radblow/characteristics.hpp"
#include "radblow/model.hpp"

namespace radblow {

enum class ProfileFamily { polynomial_bump, gaussian_truncated, random_smooth };

std::string_view to_string(ProfileFamily f);
/// Throws std::invalid_argument for unknown names.
ProfileFamily parse_family(std::string_view name);

/// Initial-data family and its parameters. With x = r / R:
///   polynomial_bump     rho = A (1 - x^2)^p              V = a R x (1 - x)
///   gaussian_truncated  rho = A (g(x) - g(1))            V = a R x (g(x) - g(1))
///                       with g(x) = exp(-(x R / w)^2)
///   random_smooth       rho = A (1 - x^2)^p (1 + sum_k d_k cos(k pi x) / (2 k^2))
///                       V = a R sum_k c_k sin(k pi x) / k^2
///                       c_k, d_k uniform in [-1, 1] drawn from `seed`
struct InitialProfileSpec {
  ProfileFamily family = ProfileFamily::polynomial_bump;
  double rho_amplitude = 1.0;  // A
  double rho_power = 2.0;      // p
  double vel_amplitude = 1.0;  // a
  double width = 0.5;          // w, gaussian only
  int modes = 4;               // random_smooth only
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  bool operator==(const InitialProfileSpec&) const = default;
};

/// Closed-form V0 with its analytic derivative.
VelocityProfile velocity_profile(const InitialProfileSpec& spec, double radius);

struct InitialData {
  std::vector<double> rho;
  std::vector<double> vel;
  double h0 = 0.0;
  std::vector<std::string> warnings;
};

/// Samples the family at cell centres and zeroes the outer margin cells.
/// H0 <= 0 is not an error; it is recorded as a warning.
InitialData build_initial_profile(const InitialProfileSpec& spec, const RadialGrid& grid,
                                  std::size_t support_margin_cells);

/// Default steepening threshold: 50 max|V0'| / R, or 50 / R for V0' = 0.
double auto_steepening_threshold(const InitialProfileSpec& spec, double radius);

}  // namespace radblow
