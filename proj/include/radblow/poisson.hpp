#pragma once

#include <span>
#include <vector>

#include "radblow/model.hpp"

namespace radblow {

/// Unit-ball constant of the Poisson source: alpha(1) = 1, alpha(2) = 2 pi,
/// alpha(3) = 4 pi. Other dimensions throw DomainError.
double alpha(int dim);

struct FieldProfile {
  std::vector<double> phi_r;     // radial force per unit mass at each centre
  std::vector<double> enclosed;  // int_0^{r_i} rho s^(N-1) ds at each centre
};

/// Radial field phi_r(r) = alpha(N) delta / r^(N-1) * int_0^r rho s^(N-1) ds.
///
/// The enclosed integral is accumulated in one pass. On [0, r_0] the density
/// is taken constant at rho_0; on each [r_{i-1}, r_i] it is taken as the mean
/// of the two centre values, and the geometric weight s^(N-1) is integrated
/// exactly. Uniform density is therefore reproduced to roundoff.
FieldProfile radial_field(std::span<const double> rho, const RadialGrid& grid,
                          const ModelConfig& cfg);

}  // namespace radblow
