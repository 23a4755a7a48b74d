#include <cmath>
#include <random>
#include <string>

#include <doctest.h>

#include "radblow/config.hpp"
#include "radblow/profiles.hpp"

using namespace radblow;

namespace {

std::string error_of(const std::string& text, bool strict = true) {
  try {
    parse_config(text, {.strict = strict});
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

ExperimentConfig random_config(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ExperimentConfig c;
  c.model.dim = 1 + static_cast<int>(gen() % 3);
  c.model.delta = static_cast<int>(gen() % 3) - 1;
  c.model.pressure_const = u(gen) < 0.3 ? 0.0 : u(gen);
  c.model.gamma = 1.0 + 2.0 * u(gen);
  c.model.support_radius = 0.1 + 3.0 * u(gen);
  c.numerics.cfl = 0.01 + 0.99 * u(gen);
  c.numerics.t_end = 10.0 * u(gen);
  c.numerics.dt_floor = 1e-12 + 1e-8 * u(gen);
  c.numerics.steepening_threshold = 1.0 + 1e3 * u(gen);
  c.numerics.output_stride = 1 + gen() % 50;
  c.numerics.support_margin_cells = 1 + gen() % 4;
  const int nchk = static_cast<int>(gen() % 4);
  double t = 0.0;
  for (int k = 0; k < nchk; ++k) {
    t += 0.01 + u(gen);
    c.numerics.checkpoints.push_back(t);
  }
  c.numerics.vacuum_floor_rel = 1e-13 * u(gen);
  c.numerics.positivity_tol_rel = 1e-13 * u(gen);
  c.n_cells = 8 + gen() % 4000;
  c.initial.family = static_cast<ProfileFamily>(gen() % 3);
  c.initial.rho_amplitude = 3.0 * u(gen);
  c.initial.rho_power = 1.0 + 3.0 * u(gen);
  c.initial.vel_amplitude = 4.0 * u(gen) - 2.0;
  c.initial.width = 0.05 + u(gen);
  c.initial.modes = 1 + static_cast<int>(gen() % 8);
  c.initial.seed = gen();
  if (u(gen) < 0.5) {
    c.sweep.delta = std::vector<int>{0, 1};
  }
  if (u(gen) < 0.5) {
    c.sweep.gamma = std::vector<double>{1.0 + u(gen), 1.0 + 2.0 * u(gen)};
  }
  if (u(gen) < 0.5) {
    c.sweep.pressure_const = std::vector<double>{u(gen)};
  }
  if (u(gen) < 0.5) {
    c.sweep.n_cells = std::vector<std::size_t>{64, 128, 256};
  }
  c.output_dir = "out/dir-" + std::to_string(gen() % 1000);
  return c;
}

}  // namespace

TEST_CASE("minimal document fills defaults") {
  const auto parsed = parse_config("");
  const auto& c = parsed.config;
  CHECK(c.numerics.cfl == 0.4);
  CHECK(c.n_cells == 1024);
  CHECK(c.model.dim == 3);
  CHECK(c.initial.family == ProfileFamily::polynomial_bump);
  // max |V0'| = 1 for r(1 - r) on [0, 1].
  CHECK(c.numerics.steepening_threshold == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(parsed.warnings.empty());
}

TEST_CASE("threshold auto scales with the profile and radius") {
  const auto c = parse_config("[model]\nsupport_radius = 2\n[initial]\nvel_amplitude = 3\n").config;
  CHECK(c.numerics.steepening_threshold == doctest::Approx(50.0 * 3.0 / 2.0).epsilon(1e-12));
  const auto flat = parse_config("[initial]\nvel_amplitude = 0\n").config;
  CHECK(flat.numerics.steepening_threshold == 50.0);
  const auto fixed = parse_config("[numerics]\nsteepening_threshold = 12.5\n").config;
  CHECK(fixed.numerics.steepening_threshold == 12.5);
}

TEST_CASE("semantic errors name the field") {
  CHECK(error_of("[model]\ngamma = 0.5\n").find("gamma must be >= 1") != std::string::npos);
  CHECK(error_of("[numerics]\ncfl = 1.5\n").find("cfl") != std::string::npos);
  CHECK(error_of("[model]\ndim = 5\n").find("dim") != std::string::npos);
  CHECK(error_of("[initial]\nfamily = square\n").find("family") != std::string::npos);
  CHECK(error_of("[numerics]\nn_cells = 2\n").find("n_cells") != std::string::npos);
  CHECK(error_of("[sweep]\ngamma = 2, 0.3\n").find("gamma must be >= 1") != std::string::npos);
}

TEST_CASE("syntax errors carry the line") {
  try {
    parse_config("[model]\n\ndim 3\n");
    FAIL("accepted");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK(error_of("[model\n").find("line 1") != std::string::npos);
  CHECK(error_of("[model]\ngamma = fast\n").find("line 2") != std::string::npos);
  CHECK(error_of("[model]\ngamma = 1.4x\n").find("line 2") != std::string::npos);
  CHECK(error_of("[model]\n = 3\n").find("line 2") != std::string::npos);
}

TEST_CASE("duplicate keys report both locations") {
  const auto msg = error_of("[numerics]\ncfl = 0.3\n# comment\ncfl = 0.5\n");
  CHECK(msg.find("line 4") != std::string::npos);
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(msg.find("cfl") != std::string::npos);
  CHECK(error_of("[model]\n[numerics]\n[model]\n").find("line 1") != std::string::npos);
  // Same key in different sections is fine.
  CHECK(error_of("[model]\ngamma = 2\n[sweep]\ngamma = 2, 3\n").empty());
}

TEST_CASE("strict mode rejects unknown keys; lax mode warns") {
  CHECK(error_of("[model]\ncolour = red\n").find("unknown key 'model.colour'") != std::string::npos);
  CHECK(error_of("[plotting]\nx = 1\n").find("unknown section") != std::string::npos);
  const auto lax = parse_config("[model]\ncolour = red\n[plotting]\nx = 1\n", {.strict = false});
  CHECK(lax.warnings.size() == 2);
  CHECK(lax.config == parse_config("").config);
}

TEST_CASE("sweep lists must not be empty") {
  CHECK(error_of("[sweep]\ndelta =\n").find("empty") != std::string::npos);
  CHECK(error_of("[sweep]\nn_cells = 64,\n").find("line 2") != std::string::npos);
}

TEST_CASE("comments and whitespace") {
  const auto c = parse_config("  output_dir = runs   # where\n; full-line comment\n[ model ]\n  gamma=2 ;x\n").config;
  CHECK(c.output_dir == "runs");
  CHECK(c.model.gamma == 2.0);
}

TEST_CASE("resolved text round-trips (property)") {
  std::mt19937_64 gen(61);
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = random_config(gen);
    const auto text = to_config_text(c);
    CAPTURE(text);
    const auto back = parse_config(text).config;
    CHECK(back == c);
    CHECK(to_config_text(back) == text);
    CHECK(config_hash(back) == config_hash(c));
  }
}

TEST_CASE("sweep expansion") {
  auto c = parse_config("[sweep]\ndelta = 0, 1\ngamma = 1.4, 2, 3\nn_cells = 64, 128\n").config;
  const auto runs = expand_sweep(c);
  REQUIRE(runs.size() == 12);
  CHECK(runs[0].model.delta == 0);
  CHECK(runs[0].model.gamma == 1.4);
  CHECK(runs[0].n_cells == 64);
  CHECK(runs[1].n_cells == 128);
  CHECK(runs[2].model.gamma == 2.0);
  CHECK(runs[11].model.delta == 1);
  for (const auto& r : runs) {
    CHECK(r.sweep.empty());
  }
  c.sweep = {};
  CHECK(expand_sweep(c).size() == 1);
}

TEST_CASE("config hash distinguishes configs") {
  const auto a = parse_config("").config;
  auto b = a;
  b.model.delta = 1;
  CHECK(config_hash(a) != config_hash(b));
  CHECK(config_hash(a).size() == 16);
}

TEST_CASE("polynomial bump has H0 near 1/12") {
  const RadialGrid grid(2048, 1.0);
  const auto data = build_initial_profile(InitialProfileSpec{}, grid, 2);
  CHECK(data.h0 == doctest::Approx(1.0 / 12.0).epsilon(1e-4));
  CHECK(data.warnings.empty());
  for (std::size_t i = 2046; i < 2048; ++i) {
    CHECK(data.rho[i] == 0.0);
    CHECK(data.vel[i] == 0.0);
  }
  CHECK(data.rho[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("zero amplitude gives trivial data with a warning") {
  InitialProfileSpec spec;
  spec.vel_amplitude = 0.0;
  spec.rho_amplitude = 0.0;
  const auto data = build_initial_profile(spec, RadialGrid(64, 1.0), 2);
  CHECK(data.h0 == 0.0);
  CHECK(data.warnings.size() == 1);
}

TEST_CASE("same seed gives bit-identical fields") {
  InitialProfileSpec spec;
  spec.family = ProfileFamily::random_smooth;
  spec.seed = 12345;
  const RadialGrid grid(300, 1.5);
  const auto a = build_initial_profile(spec, grid, 3);
  const auto b = build_initial_profile(spec, grid, 3);
  CHECK(a.rho == b.rho);
  CHECK(a.vel == b.vel);
  spec.seed = 12346;
  CHECK(build_initial_profile(spec, grid, 3).vel != a.vel);
}

TEST_CASE("profiles are admissible and derivatives consistent (property)") {
  std::mt19937_64 gen(62);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 150; ++trial) {
    InitialProfileSpec spec;
    spec.family = static_cast<ProfileFamily>(trial % 3);
    spec.rho_amplitude = 2.0 * u(gen);
    spec.rho_power = 1.0 + 3.0 * u(gen);
    spec.vel_amplitude = 4.0 * u(gen) - 2.0;
    spec.width = 0.1 + u(gen);
    spec.modes = 1 + static_cast<int>(gen() % 6);
    spec.seed = gen();
    const double radius = 0.2 + 2.0 * u(gen);
    const RadialGrid grid(50 + gen() % 200, radius);
    const std::size_t margin = 1 + gen() % 3;
    const auto data = build_initial_profile(spec, grid, margin);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(data.rho[i] >= 0.0);
      if (i + margin >= grid.size()) {
        CHECK(data.rho[i] == 0.0);
        CHECK(data.vel[i] == 0.0);
      }
    }
    CHECK((data.h0 > 0.0) == data.warnings.empty());
    const auto v0 = velocity_profile(spec, radius);
    CHECK(v0.value(radius) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    for (const double x : {0.1, 0.37, 0.6, 0.93}) {
      const double r = x * radius;
      const double h = 1e-6 * radius;
      const double fd = (v0.value(r + h) - v0.value(r - h)) / (2.0 * h);
      CHECK(v0.derivative(r) == doctest::Approx(fd).scale(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("profile parameter checks") {
  InitialProfileSpec spec;
  spec.width = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = {};
  spec.rho_power = 0.5;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = {};
  spec.modes = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("blob"), std::invalid_argument);
  CHECK(parse_family("gaussian_truncated") == ProfileFamily::gaussian_truncated);
}
