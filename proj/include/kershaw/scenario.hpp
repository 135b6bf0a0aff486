#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kershaw/closures.hpp"
#include "kershaw/solver.hpp"

namespace kershaw {

enum class ScenarioName { PlaneSource, SourceBeam, Custom };

/// Vacuum density psi_vac used by both benchmarks.
inline constexpr double kVacuumDensity = 0.5e-8;

/// A kinetic problem description, independent of the moment model.
struct Scenario {
  ScenarioName name = ScenarioName::Custom;
  double z_left = 0.0;
  double z_right = 1.0;
  double final_time = 1.0;

  std::function<double(double)> sigma_a;
  std::function<double(double)> sigma_s;
  std::function<double(double)> source;

  /// Boundary data as moments in the requested basis and order.
  std::function<MomentVector(std::size_t order, Basis)> left_boundary;
  std::function<MomentVector(std::size_t order, Basis)> right_boundary;
  /// Initial cell moments for a grid.
  std::function<std::vector<MomentVector>(const Grid&, std::size_t order, Basis)> initial;
  /// True if the grid must have an even cell count (centered Dirac data).
  bool requires_even_cells = false;

  static Scenario plane_source();
  static Scenario source_beam();
};

std::string to_string(ScenarioName name);

/// Moments of the normalized beam exp(-1e5 (mu-1)^2) / <exp(-1e5 (mu-1)^2)>
/// in the given basis, computed in the stretched variable s = (1-mu) sqrt(1e5).
MomentVector beam_moments(std::size_t order, Basis basis);

/// Isotropic moments of density `density` in the given basis.
MomentVector isotropic_in_basis(std::size_t order, double density, Basis basis);

struct DiagnosticsRow {
  double time = 0.0;
  double mass = 0.0;
  /// Smallest normalized slack since the previous row.
  double min_slack = 0.0;
  std::size_t rescued_cells = 0;
};

struct Snapshot {
  double time = 0.0;
  std::vector<MomentVector> cells;
};

struct RunResult {
  Grid grid;
  ClosureKind model;
  SolverState final_state;
  std::vector<Snapshot> snapshots;
  std::vector<DiagnosticsRow> diagnostics;
  double dt = 0.0;
  std::size_t steps = 0;
};

struct RunOptions {
  double cfl = 0.5;
  /// Overrides the scenario's final time when > 0.
  double final_time = 0.0;
  /// Times at which snapshots are kept; empty means the 11 points
  /// k t_f / 10, k = 0..10. Each is snapped to the nearest step.
  std::vector<double> output_times;
};

/// Evolves a scenario from t = 0 to t_f with a fixed step; the step count
/// is rounded up to a multiple of 10 so the default checkpoints land on
/// steps exactly.
RunResult run_scenario(const Scenario& scenario, const ClosureKind& kind, std::size_t n_cells,
                       const RunOptions& options = {});

struct ErrorNorms {
  double l1 = 0.0;
  double linf = 0.0;
};

/// L1 = sum |du_0| dz and Linf = max |du_0| of u_0 on the run grid. The
/// reference grid must cover the same interval with an integer multiple of
/// the run's cells; it is cell-averaged onto the run grid.
ErrorNorms compare_to_reference(const Grid& grid, std::span<const double> density,
                                const Grid& reference_grid,
                                std::span<const double> reference_density);

ErrorNorms compare_to_reference(const RunResult& run, const RunResult& reference);

/// u_0 of every cell.
std::vector<double> densities(const std::vector<MomentVector>& cells);

}  // namespace kershaw
