#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kershaw/closures.hpp"
#include "kershaw/minimum_entropy.hpp"
#include "kershaw/moments.hpp"

namespace kershaw {

/// Uniform cell-centered grid on [z_left, z_right].
struct Grid {
  double z_left = 0.0;
  double z_right = 1.0;
  std::size_t n_cells = 2;

  Grid() = default;
  Grid(double left, double right, std::size_t cells);

  double dz() const noexcept { return (z_right - z_left) / static_cast<double>(n_cells); }
  double center(std::size_t i) const noexcept {
    return z_left + (static_cast<double>(i) + 0.5) * dz();
  }
  std::vector<double> centers() const;
};

/// Piecewise-constant coefficients, one value per cell.
struct MaterialField {
  std::vector<double> sigma_a;
  std::vector<double> sigma_s;
  /// Angle-integrated isotropic source; its mu-density is Q/2.
  std::vector<double> source;

  /// Samples the coefficient functions at the cell centers.
  static MaterialField sample(const Grid& grid, const std::function<double(double)>& sigma_a,
                              const std::function<double(double)>& sigma_s,
                              const std::function<double(double)>& source);

  double max_total_cross_section() const;
};

/// Ghost-cell moments at both ends, in the model's basis.
struct BoundaryMoments {
  MomentVector left;
  MomentVector right;
};

struct SolverState {
  double time = 0.0;
  ClosureKind model;
  std::vector<MomentVector> cells;
};

/// s(u) = sigma_s <b C(psi)> + <b Q> - sigma_a u for isotropic scattering
/// C(psi) = u_0/2 - psi and isotropic source density Q/2.
MomentVector scattering_source(const MomentVector& u, double sigma_s, double sigma_a,
                               double source, Basis basis = Basis::Monomial);

/// 1/2 (F(uL) + F(uR)) - 1/2 (uR - uL), dissipation speed 1.
MomentVector lax_friedrichs_flux(const MomentVector& left, const MomentVector& right,
                                 const ClosureKind& kind);

struct StepDiagnostics {
  /// Smallest normalized slack seen before rescue (+inf for P_N).
  double min_slack = 0.0;
  std::size_t rescued_cells = 0;
};

/// Explicit finite-volume stepper. Owns the per-cell warm-start cache of
/// the M_N multipliers.
class Stepper {
 public:
  Stepper(Grid grid, MaterialField materials, BoundaryMoments boundary, ClosureKind model);

  const Grid& grid() const noexcept { return grid_; }
  const ClosureKind& model() const noexcept { return model_; }

  /// dt = cfl * min(dz, 1 / max(sigma_a + sigma_s)).
  double stable_time_step(double cfl) const;

  /// Forward Euler: u_i -= dt/dz (F_{i+1/2} - F_{i-1/2}); u_i += dt s(u_i).
  /// Cells of Kershaw/M_N runs with normalized slack in (-1e-9, 0) get u_N
  /// projected onto [f_low, f_up]; worse violations throw RealizabilityLost.
  StepDiagnostics step(SolverState& state, double dt);

  /// Realizability-preserving limit of the rescue.
  static constexpr double kRescueSlack = 1e-9;

 private:
  MomentVector cell_flux(std::size_t index, const MomentVector& u);

  Grid grid_;
  MaterialField materials_;
  BoundaryMoments boundary_;
  ClosureKind model_;
  std::optional<MinimumEntropyClosure> entropy_;
  /// Warm starts for cells 0..n-1 and the two ghosts (n, n+1).
  std::vector<Multipliers> warm_;
  std::vector<MomentVector> fluxes_;
  std::vector<MomentVector> interface_;
};

/// Free-function form of Stepper::step (builds a Stepper each call).
SolverState step(const SolverState& state, double dt, const Grid& grid,
                 const MaterialField& materials, const BoundaryMoments& boundary);

}  // namespace kershaw
