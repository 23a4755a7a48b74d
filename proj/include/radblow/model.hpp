#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace radblow {

/// Raised when an argument lies outside the mathematical domain of an operation
/// (negative density, a time past a singularity, an inapplicable hypothesis).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when field lengths disagree with the grid they are sampled on.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Physical parameters of the radial Euler / Euler-Poisson system with a
/// gamma-law pressure P = K rho^gamma.
struct ModelConfig {
  int dim = 3;                  // spatial dimension N, one of 1, 2, 3
  int delta = 0;                // force sign: 0 Euler, +1 repulsive, -1 attractive
  double pressure_const = 0.0;  // K; zero means pressureless
  double gamma = 1.4;           // adiabatic exponent, >= 1
  double support_radius = 1.0;  // R

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  bool pressureless() const { return pressure_const == 0.0; }
  /// Pressure law covered by the blowup theorem: K = 0 or gamma > 1.
  bool eos_in_theorem_scope() const { return pressureless() || gamma > 1.0; }
  /// Force sign covered by the blowup theorem: delta >= 0.
  bool force_in_theorem_scope() const { return delta >= 0; }

  bool operator==(const ModelConfig&) const = default;
};

/// Uniform cell-centred grid on [0, R]. Cell i spans [i dr, (i+1) dr] and has
/// its centre at (i + 1/2) dr, so no centre sits on the origin.
class RadialGrid {
 public:
  RadialGrid(std::size_t n_cells, double radius);

  std::size_t size() const { return centers_.size(); }
  double dr() const { return dr_; }
  double radius() const { return radius_; }
  double center(std::size_t i) const { return centers_[i]; }
  /// Left face of cell i; face(size()) == radius().
  double face(std::size_t i) const { return static_cast<double>(i) * dr_; }
  std::span<const double> centers() const { return centers_; }

 private:
  double radius_;
  double dr_;
  std::vector<double> centers_;
};

/// Density and radial velocity on a grid at one instant.
struct FluidState {
  double time = 0.0;
  std::vector<double> rho;
  std::vector<double> vel;

  std::size_t size() const { return rho.size(); }
  bool operator==(const FluidState&) const = default;
};

/// P = K rho^gamma. Throws DomainError for rho < 0.
double pressure(double rho, const ModelConfig& cfg);

/// c = sqrt(dP/drho) = sqrt(K gamma rho^(gamma-1)); zero when pressureless.
double sound_speed(double rho, const ModelConfig& cfg);

/// Specific enthalpy h with dh/drho = P'(rho)/rho, so that P_r / rho = h_r.
/// gamma > 1: K gamma/(gamma-1) rho^(gamma-1). gamma = 1: K log(rho), which
/// needs rho > 0; callers pass a floored density.
double enthalpy(double rho, const ModelConfig& cfg);

struct ValidationReport {
  bool nonnegative = false;
  bool compact_support = false;
  double h0 = 0.0;
  bool h0_positive = false;
  bool nontrivial = false;  // rho0 not identically zero
  bool eos_in_scope = false;
  bool force_in_scope = false;
  /// Every hypothesis of the blowup theorem holds for this data.
  bool theorem_applicable = false;

  /// Data the solver will accept at all.
  bool admissible() const { return nonnegative && compact_support; }
};

/// Checks initial data against the solver contract and the theorem hypotheses.
/// The outermost `support_margin_cells` cells of both fields must be exactly
/// zero. H0 is the midpoint quadrature of int_0^R r V0 dr.
ValidationReport validate_initial_data(std::span<const double> rho0, std::span<const double> vel0,
                                       const RadialGrid& grid, const ModelConfig& cfg,
                                       std::size_t support_margin_cells);

void check_shape(std::span<const double> field, const RadialGrid& grid, const char* name);

}  // namespace radblow
