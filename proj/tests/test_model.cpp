#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "radblow/model.hpp"

using namespace radblow;

namespace {

ModelConfig gas(double k, double gamma) {
  ModelConfig cfg;
  cfg.pressure_const = k;
  cfg.gamma = gamma;
  return cfg;
}

// Samples V on centres with the outer `margin` cells forced to zero.
std::vector<double> sample(const RadialGrid& grid, std::size_t margin, double (*f)(double)) {
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 0; i + margin < grid.size(); ++i) {
    out[i] = f(grid.center(i));
  }
  return out;
}

double bump_velocity(double r) { return r * (1.0 - r); }
double neg_bump_velocity(double r) { return -r * (1.0 - r); }
double bump_density(double r) { return (1.0 - r * r) * (1.0 - r * r); }

}  // namespace

TEST_CASE("pressure law") {
  CHECK(pressure(0.0, gas(3.0, 1.7)) == 0.0);
  CHECK(pressure(5.0, gas(0.0, 1.4)) == 0.0);
  CHECK(pressure(3.0, gas(1.0, 2.0)) == doctest::Approx(9.0).epsilon(1e-15));
  CHECK_THROWS_AS(pressure(-1e-3, gas(1.0, 2.0)), DomainError);
}

TEST_CASE("sound speed") {
  CHECK(sound_speed(4.0, gas(0.0, 1.4)) == 0.0);
  CHECK(sound_speed(1.0, gas(1.0, 2.0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(sound_speed(0.0, gas(1.0, 1.4)) == 0.0);
}

TEST_CASE("enthalpy gradient matches pressure gradient over density") {
  // dh/drho = P'(rho) / rho, checked by central differences.
  for (const double gamma : {1.0, 1.4, 2.0, 3.0}) {
    const auto cfg = gas(0.7, gamma);
    for (const double rho : {0.1, 0.8, 2.5}) {
      const double e = 1e-6;
      const double dh = (enthalpy(rho + e, cfg) - enthalpy(rho - e, cfg)) / (2 * e);
      const double dp = (pressure(rho + e, cfg) - pressure(rho - e, cfg)) / (2 * e);
      CHECK(dh == doctest::Approx(dp / rho).epsilon(1e-7));
    }
  }
}

TEST_CASE("pressure is monotone in density (property)") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> rho(0.0, 10.0);
  std::uniform_real_distribution<double> k(0.0, 5.0);
  std::uniform_real_distribution<double> g(1.0, 3.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto cfg = gas(k(gen), g(gen));
    double a = rho(gen);
    double b = rho(gen);
    if (a > b) {
      std::swap(a, b);
    }
    CHECK(pressure(a, cfg) <= pressure(b, cfg));
  }
}

TEST_CASE("c^2 rho = gamma P (property)") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> rho(1e-6, 10.0);
  std::uniform_real_distribution<double> k(0.0, 5.0);
  std::uniform_real_distribution<double> g(1.0, 3.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto cfg = gas(k(gen), g(gen));
    const double r = rho(gen);
    const double c = sound_speed(r, cfg);
    CHECK(c * c * r == doctest::Approx(cfg.gamma * pressure(r, cfg)).epsilon(1e-12));
  }
}

TEST_CASE("model config validation names the field") {
  ModelConfig cfg;
  cfg.gamma = 0.5;
  CHECK_THROWS_WITH_AS(cfg.validate(), "gamma must be >= 1", std::invalid_argument);
  cfg = {};
  cfg.dim = 4;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.pressure_const = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.support_radius = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.delta = 2;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK_NOTHROW(ModelConfig{}.validate());
}

TEST_CASE("theorem scope flags") {
  CHECK(gas(0.0, 1.0).eos_in_theorem_scope());
  CHECK_FALSE(gas(1.0, 1.0).eos_in_theorem_scope());
  CHECK(gas(1.0, 1.0001).eos_in_theorem_scope());
  ModelConfig attractive;
  attractive.delta = -1;
  CHECK_FALSE(attractive.force_in_theorem_scope());
}

TEST_CASE("grid geometry") {
  const RadialGrid grid(8, 2.0);
  CHECK(grid.dr() == 0.25);
  CHECK(grid.center(0) == 0.125);
  CHECK(grid.center(7) == doctest::Approx(1.875));
  CHECK(grid.face(8) == 2.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(grid.center(i) - grid.center(i - 1) == doctest::Approx(grid.dr()));
  }
  CHECK(grid.center(0) > 0.0);
  CHECK(grid.center(7) < grid.radius());
  CHECK_THROWS(RadialGrid(0, 1.0));
  CHECK_THROWS(RadialGrid(4, -1.0));
}

TEST_CASE("trivial data is not theorem-applicable") {
  const RadialGrid grid(64, 1.0);
  const std::vector<double> zero(64, 0.0);
  const auto rep = validate_initial_data(zero, zero, grid, ModelConfig{}, 2);
  CHECK(rep.h0 == 0.0);
  CHECK_FALSE(rep.h0_positive);
  CHECK_FALSE(rep.theorem_applicable);
  CHECK(rep.admissible());
}

TEST_CASE("H0 of r(1-r) is 1/12, and its sign flips with V0") {
  const RadialGrid grid(1024, 1.0);
  const auto rho = sample(grid, 2, bump_density);
  const auto rep = validate_initial_data(rho, sample(grid, 2, bump_velocity), grid, ModelConfig{}, 2);
  CHECK(rep.h0 == doctest::Approx(1.0 / 12.0).epsilon(1e-4));
  CHECK(rep.h0_positive);
  CHECK(rep.theorem_applicable);
  const auto neg = validate_initial_data(rho, sample(grid, 2, neg_bump_velocity), grid, ModelConfig{}, 2);
  CHECK(neg.h0 == doctest::Approx(-1.0 / 12.0).epsilon(1e-4));
  CHECK_FALSE(neg.h0_positive);
  CHECK_FALSE(neg.theorem_applicable);
}

TEST_CASE("H0 converges at second order under refinement") {
  // Full-grid quadrature (no margin) of int_0^1 r^2 (1 - r) dr = 1/12.
  double prev = 0.0;
  for (const std::size_t n : {32u, 64u, 128u, 256u, 512u}) {
    const RadialGrid grid(n, 1.0);
    std::vector<double> rho(n, 0.0);
    const auto vel = sample(grid, 0, bump_velocity);
    rho[0] = 1.0;
    double h0 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      h0 += grid.center(i) * vel[i] * grid.dr();
    }
    const double err = std::abs(h0 - 1.0 / 12.0);
    if (prev > 0.0) {
      CHECK(std::log2(prev / err) == doctest::Approx(2.0).epsilon(0.02));
    }
    prev = err;
  }
}

TEST_CASE("validation flags") {
  const RadialGrid grid(16, 1.0);
  std::vector<double> rho(16, 1.0);
  std::vector<double> vel(16, 0.0);
  rho[15] = rho[14] = 0.0;
  auto rep = validate_initial_data(rho, vel, grid, ModelConfig{}, 2);
  CHECK(rep.compact_support);
  CHECK(rep.nonnegative);
  rho[14] = 1e-300;
  rep = validate_initial_data(rho, vel, grid, ModelConfig{}, 2);
  CHECK_FALSE(rep.compact_support);
  rho[14] = 0.0;
  vel[15] = 1e-9;
  CHECK_FALSE(validate_initial_data(rho, vel, grid, ModelConfig{}, 2).compact_support);
  vel[15] = 0.0;
  rho[3] = -1e-9;
  CHECK_FALSE(validate_initial_data(rho, vel, grid, ModelConfig{}, 2).nonnegative);

  ModelConfig iso = gas(1.0, 1.0);
  rho[3] = 1.0;
  for (std::size_t i = 0; i < 14; ++i) {
    vel[i] = grid.center(i) * (1.0 - grid.center(i));
  }
  rep = validate_initial_data(rho, vel, grid, iso, 2);
  CHECK(rep.h0_positive);
  CHECK_FALSE(rep.eos_in_scope);
  CHECK_FALSE(rep.theorem_applicable);
}

TEST_CASE("shape mismatch is rejected") {
  const RadialGrid grid(16, 1.0);
  const std::vector<double> short_field(15, 0.0);
  const std::vector<double> ok(16, 0.0);
  CHECK_THROWS_AS(validate_initial_data(short_field, ok, grid, ModelConfig{}, 2), ShapeError);
  CHECK_THROWS_AS(validate_initial_data(ok, short_field, grid, ModelConfig{}, 2), ShapeError);
}
