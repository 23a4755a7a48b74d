#include "radblow/poisson.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace radblow {

double alpha(int dim) {
  switch (dim) {
    case 1:
      return 1.0;
    case 2:
      return 2.0 * std::numbers::pi;
    case 3:
      return 4.0 * std::numbers::pi;
    default:
      throw DomainError(fmt::format("alpha(N) is only defined for N = 1, 2, 3 (got {})", dim));
  }
}

FieldProfile radial_field(std::span<const double> rho, const RadialGrid& grid,
                          const ModelConfig& cfg) {
  check_shape(rho, grid, "rho");
  const std::size_t n = grid.size();
  FieldProfile out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    if (rho[i] < 0.0) {
      throw DomainError(fmt::format("radial_field: negative density {} in cell {}", rho[i], i));
    }
  }

  const int dim = cfg.dim;
  const double a = alpha(dim);
  const auto moment = [dim](double r) { return std::pow(r, dim) / dim; };

  double enclosed = rho[0] * moment(grid.center(0));
  out.enclosed[0] = enclosed;
  for (std::size_t i = 1; i < n; ++i) {
    const double shell = moment(grid.center(i)) - moment(grid.center(i - 1));
    enclosed += 0.5 * (rho[i - 1] + rho[i]) * shell;
    out.enclosed[i] = enclosed;
  }

  if (cfg.delta == 0) {
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid.center(i);
    out.phi_r[i] = a * cfg.delta * out.enclosed[i] / std::pow(r, dim - 1);
  }
  return out;
}

}  // namespace radblow
