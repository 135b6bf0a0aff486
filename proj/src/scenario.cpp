#include "kershaw/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "kershaw/errors.hpp"
#include "kershaw/legendre.hpp"
#include "kershaw/quadrature.hpp"
#include "kershaw/realizability.hpp"

namespace kershaw {

namespace {

constexpr double kBeamSharpness = 1e5;
// e^{-s^2} < 1e-62 beyond s = 12, far below double resolution of the integral.
constexpr double kBeamCutoff = 12.0;
constexpr std::size_t kBeamNodes = 160;

std::vector<MomentVector> vacuum_cells(const Grid& grid, std::size_t order, Basis basis) {
  return std::vector<MomentVector>(grid.n_cells,
                                   isotropic_in_basis(order, 2.0 * kVacuumDensity, basis));
}

MomentVector vacuum_boundary(std::size_t order, Basis basis) {
  return isotropic_in_basis(order, 2.0 * kVacuumDensity, basis);
}

}  // namespace

std::string to_string(ScenarioName name) {
  switch (name) {
    case ScenarioName::PlaneSource: return "plane_source";
    case ScenarioName::SourceBeam: return "source_beam";
    case ScenarioName::Custom: return "custom";
  }
  return "custom";
}

MomentVector isotropic_in_basis(std::size_t order, double density, Basis basis) {
  if (basis == Basis::Monomial) return isotropic_moments(order, density);
  MomentVector u(order);
  u[0] = density;
  return u;
}

MomentVector beam_moments(std::size_t order, Basis basis) {
  // mu = 1 - s / sqrt(a); the Jacobian cancels in the normalization.
  const QuadratureRule unit = gauss_legendre(kBeamNodes);
  const double scale = std::sqrt(kBeamSharpness);
  MomentVector u(order);
  double mass = 0.0;
  for (std::size_t q = 0; q < unit.size(); ++q) {
    const double s = 0.5 * kBeamCutoff * (unit.nodes()[q] + 1.0);
    const double w = 0.5 * kBeamCutoff * unit.weights()[q] * std::exp(-s * s);
    const double mu = 1.0 - s / scale;
    mass += w;
    if (basis == Basis::Monomial) {
      double p = w;
      for (std::size_t j = 0; j <= order; ++j) {
        u[j] += p;
        p *= mu;
      }
    } else {
      const auto leg = legendre_values(order, mu);
      for (std::size_t j = 0; j <= order; ++j) u[j] += w * leg[j];
    }
  }
  for (std::size_t j = 0; j <= order; ++j) u[j] /= mass;
  return u;
}

Scenario Scenario::plane_source() {
  Scenario s;
  s.name = ScenarioName::PlaneSource;
  s.z_left = -1.2;
  s.z_right = 1.2;
  s.final_time = 1.0;
  s.sigma_a = [](double) { return 0.0; };
  s.sigma_s = [](double) { return 1.0; };
  s.source = [](double) { return 0.0; };
  s.left_boundary = vacuum_boundary;
  s.right_boundary = vacuum_boundary;
  s.requires_even_cells = true;
  s.initial = [](const Grid& grid, std::size_t order, Basis basis) {
    auto cells = vacuum_cells(grid, order, basis);
    // psi = delta(z) carries u_0 = 2, split between the two central cells.
    const MomentVector pulse = isotropic_in_basis(order, 1.0 / grid.dz(), basis);
    const std::size_t mid = grid.n_cells / 2;
    cells[mid - 1] += pulse;
    cells[mid] += pulse;
    return cells;
  };
  return s;
}

Scenario Scenario::source_beam() {
  Scenario s;
  s.name = ScenarioName::SourceBeam;
  s.z_left = 0.0;
  s.z_right = 3.0;
  s.final_time = 2.5;
  s.sigma_a = [](double z) { return z <= 2.0 ? 1.0 : 0.0; };
  s.sigma_s = [](double z) {
    if (z <= 1.0) return 0.0;
    return z <= 2.0 ? 2.0 : 10.0;
  };
  s.source = [](double z) { return (z >= 1.0 && z <= 1.5) ? 1.0 : 0.0; };
  s.left_boundary = beam_moments;
  s.right_boundary = vacuum_boundary;
  s.initial = vacuum_cells;
  return s;
}

RunResult run_scenario(const Scenario& scenario, const ClosureKind& kind, std::size_t n_cells,
                       const RunOptions& options) {
  if (kind.order < 1) throw Error("model order must be at least 1");
  if (scenario.requires_even_cells && n_cells % 2 != 0) {
    throw Error(to_string(scenario.name) + " needs an even number of cells, got " +
                std::to_string(n_cells));
  }
  if (!(options.cfl > 0.0 && options.cfl <= 1.0)) throw Error("cfl must lie in (0, 1]");

  RunResult result;
  result.grid = Grid(scenario.z_left, scenario.z_right, n_cells);
  result.model = kind;
  const Basis basis = kind.basis();
  const std::size_t n = kind.order;

  MaterialField materials =
      MaterialField::sample(result.grid, scenario.sigma_a, scenario.sigma_s, scenario.source);
  BoundaryMoments boundary{scenario.left_boundary(n, basis), scenario.right_boundary(n, basis)};
  Stepper stepper(result.grid, std::move(materials), std::move(boundary), kind);

  const double t_final = options.final_time > 0.0 ? options.final_time : scenario.final_time;
  const double dt0 = stepper.stable_time_step(options.cfl);
  std::size_t steps = static_cast<std::size_t>(std::ceil(t_final / dt0 / 10.0 - 1e-12)) * 10;
  steps = std::max<std::size_t>(steps, 10);
  const double dt = t_final / static_cast<double>(steps);
  result.dt = dt;
  result.steps = steps;

  std::set<std::size_t> checkpoints;
  if (options.output_times.empty()) {
    for (std::size_t k = 0; k <= 10; ++k) checkpoints.insert(k * steps / 10);
  } else {
    for (double t : options.output_times) {
      if (t < 0.0 || t > t_final * (1.0 + 1e-12)) {
        throw Error("output time " + std::to_string(t) + " lies outside [0, t_f]");
      }
      checkpoints.insert(std::min(steps, static_cast<std::size_t>(std::llround(t / dt))));
    }
  }

  SolverState& state = result.final_state;
  state.time = 0.0;
  state.model = kind;
  state.cells = scenario.initial(result.grid, n, basis);

  const double dz = result.grid.dz();
  auto mass = [&] {
    double m = 0.0;
    for (const auto& u : state.cells) m += u[0] * dz;
    return m;
  };

  double window_slack = std::numeric_limits<double>::infinity();
  std::size_t window_rescued = 0;
  if (kind.family != ClosureFamily::PN) {
    for (const auto& u : state.cells) window_slack = std::min(window_slack, realizability_slack(u));
  }
  auto record = [&](std::size_t index) {
    const double t = static_cast<double>(index) * dt;
    result.diagnostics.push_back({t, mass(), window_slack, window_rescued});
    result.snapshots.push_back({t, state.cells});
    window_slack = std::numeric_limits<double>::infinity();
    window_rescued = 0;
  };

  if (checkpoints.count(0) != 0) record(0);
  for (std::size_t k = 1; k <= steps; ++k) {
    const StepDiagnostics d = stepper.step(state, dt);
    window_slack = std::min(window_slack, d.min_slack);
    window_rescued += d.rescued_cells;
    if (checkpoints.count(k) != 0) record(k);
  }
  state.time = t_final;
  return result;
}

ErrorNorms compare_to_reference(const Grid& grid, std::span<const double> density,
                                const Grid& reference_grid,
                                std::span<const double> reference_density) {
  if (density.size() != grid.n_cells || reference_density.size() != reference_grid.n_cells) {
    throw GridMismatch("density arrays do not match their grids");
  }
  const double span = grid.z_right - grid.z_left;
  if (std::abs(grid.z_left - reference_grid.z_left) > 1e-12 * span ||
      std::abs(grid.z_right - reference_grid.z_right) > 1e-12 * span) {
    throw GridMismatch("reference covers a different interval");
  }
  if (reference_grid.n_cells % grid.n_cells != 0) {
    throw GridMismatch("reference has " + std::to_string(reference_grid.n_cells) +
                       " cells, not a multiple of " + std::to_string(grid.n_cells));
  }
  const std::size_t factor = reference_grid.n_cells / grid.n_cells;
  ErrorNorms e;
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    double avg = 0.0;
    for (std::size_t k = 0; k < factor; ++k) avg += reference_density[i * factor + k];
    avg /= static_cast<double>(factor);
    const double diff = std::abs(density[i] - avg);
    e.l1 += diff * grid.dz();
    e.linf = std::max(e.linf, diff);
  }
  return e;
}

ErrorNorms compare_to_reference(const RunResult& run, const RunResult& reference) {
  const auto a = densities(run.final_state.cells);
  const auto b = densities(reference.final_state.cells);
  return compare_to_reference(run.grid, a, reference.grid, b);
}

std::vector<double> densities(const std::vector<MomentVector>& cells) {
  std::vector<double> d(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) d[i] = cells[i][0];
  return d;
}

}  // namespace kershaw
