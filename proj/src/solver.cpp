#include "kershaw/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kershaw/errors.hpp"
#include "kershaw/realizability.hpp"

namespace kershaw {

Grid::Grid(double left, double right, std::size_t cells)
    : z_left(left), z_right(right), n_cells(cells) {
  if (cells < 2) throw Error("grid needs at least 2 cells, got " + std::to_string(cells));
  if (!(right > left)) throw Error("grid needs z_right > z_left");
}

std::vector<double> Grid::centers() const {
  std::vector<double> z(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) z[i] = center(i);
  return z;
}

MaterialField MaterialField::sample(const Grid& grid, const std::function<double(double)>& sigma_a,
                                    const std::function<double(double)>& sigma_s,
                                    const std::function<double(double)>& source) {
  MaterialField m;
  m.sigma_a.resize(grid.n_cells);
  m.sigma_s.resize(grid.n_cells);
  m.source.resize(grid.n_cells);
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    const double z = grid.center(i);
    m.sigma_a[i] = sigma_a(z);
    m.sigma_s[i] = sigma_s(z);
    m.source[i] = source(z);
    if (m.sigma_a[i] < 0.0 || m.sigma_s[i] < 0.0 || m.source[i] < 0.0) {
      throw Error("material coefficients must be nonnegative (cell " + std::to_string(i) + ")");
    }
  }
  return m;
}

double MaterialField::max_total_cross_section() const {
  double m = 0.0;
  for (std::size_t i = 0; i < sigma_a.size(); ++i) m = std::max(m, sigma_a[i] + sigma_s[i]);
  return m;
}

MomentVector scattering_source(const MomentVector& u, double sigma_s, double sigma_a,
                               double source, Basis basis) {
  MomentVector s(u.order());
  for (std::size_t j = 0; j <= u.order(); ++j) {
    // Moments of the isotropic density u_0/2 and of the source density Q/2.
    double iso = 0.0, q = 0.0;
    if (basis == Basis::Monomial) {
      iso = 0.5 * u[0] * monomial_integral(j);
      q = 0.5 * source * monomial_integral(j);
    } else if (j == 0) {
      iso = u[0];
      q = source;
    }
    s[j] = sigma_s * (iso - u[j]) + q - sigma_a * u[j];
  }
  return s;
}

MomentVector lax_friedrichs_flux(const MomentVector& left, const MomentVector& right,
                                 const ClosureKind& kind) {
  const MomentVector fl = flux(kind, left);
  const MomentVector fr = flux(kind, right);
  MomentVector g(left.order());
  for (std::size_t j = 0; j <= left.order(); ++j) {
    g[j] = 0.5 * (fl[j] + fr[j]) - 0.5 * (right[j] - left[j]);
  }
  return g;
}

Stepper::Stepper(Grid grid, MaterialField materials, BoundaryMoments boundary, ClosureKind model)
    : grid_(std::move(grid)),
      materials_(std::move(materials)),
      boundary_(std::move(boundary)),
      model_(model) {
  if (materials_.sigma_a.size() != grid_.n_cells || materials_.sigma_s.size() != grid_.n_cells ||
      materials_.source.size() != grid_.n_cells) {
    throw Error("material field does not match the grid");
  }
  if (boundary_.left.order() != model_.order || boundary_.right.order() != model_.order) {
    throw Error("boundary moments do not match the model order");
  }
  if (model_.family == ClosureFamily::MN) entropy_.emplace(model_.order);
  warm_.resize(grid_.n_cells + 2);
  fluxes_.assign(grid_.n_cells + 2, MomentVector(model_.order));
  interface_.assign(grid_.n_cells + 1, MomentVector(model_.order));
  if (model_.family != ClosureFamily::PN) {
    for (const auto* ghost : {&boundary_.left, &boundary_.right}) {
      if (!is_realizable(*ghost, 1e-9)) throw NotRealizable("boundary moments are not realizable");
    }
  }
  fluxes_[grid_.n_cells] = cell_flux(grid_.n_cells, boundary_.left);
  fluxes_[grid_.n_cells + 1] = cell_flux(grid_.n_cells + 1, boundary_.right);
}

double Stepper::stable_time_step(double cfl) const {
  double limit = grid_.dz();
  const double sigma = materials_.max_total_cross_section();
  if (sigma > 0.0) limit = std::min(limit, 1.0 / sigma);
  return cfl * limit;
}

MomentVector Stepper::cell_flux(std::size_t index, const MomentVector& u) {
  const std::size_t n = model_.order;
  if (model_.family == ClosureFamily::PN) return pn_flux(u);

  double next = 0.0;
  if (model_.family == ClosureFamily::Kershaw) {
    next = kershaw_next_moment(u, false);
  } else {
    Multipliers& warm = warm_[index];
    DualSolveResult r;
    try {
      r = entropy_->solve(u, {}, warm.alpha.empty() ? nullptr : &warm);
    } catch (const NoConvergence&) {
      r = entropy_->solve(u);
    }
    warm = r.multipliers;
    next = entropy_->close(warm);
  }
  MomentVector f(n);
  for (std::size_t j = 0; j < n; ++j) f[j] = u[j + 1];
  f[n] = next;
  return f;
}

StepDiagnostics Stepper::step(SolverState& state, double dt) {
  const std::size_t cells = grid_.n_cells;
  if (state.cells.size() != cells) throw Error("state does not match the grid");
  const std::size_t n = model_.order;
  const double ratio = dt / grid_.dz();

  for (std::size_t i = 0; i < cells; ++i) fluxes_[i] = cell_flux(i, state.cells[i]);

  // Interface i sits between cell i-1 and cell i; ghosts at both ends.
  for (std::size_t i = 0; i <= cells; ++i) {
    const MomentVector& ul = i == 0 ? boundary_.left : state.cells[i - 1];
    const MomentVector& ur = i == cells ? boundary_.right : state.cells[i];
    const MomentVector& fl = i == 0 ? fluxes_[cells] : fluxes_[i - 1];
    const MomentVector& fr = i == cells ? fluxes_[cells + 1] : fluxes_[i];
    MomentVector& g = interface_[i];
    for (std::size_t j = 0; j <= n; ++j) g[j] = 0.5 * (fl[j] + fr[j]) - 0.5 * (ur[j] - ul[j]);
  }

  StepDiagnostics diag;
  diag.min_slack = std::numeric_limits<double>::infinity();
  const Basis basis = model_.basis();
  for (std::size_t i = 0; i < cells; ++i) {
    MomentVector& u = state.cells[i];
    const MomentVector s =
        scattering_source(u, materials_.sigma_s[i], materials_.sigma_a[i], materials_.source[i], basis);
    for (std::size_t j = 0; j <= n; ++j) {
      u[j] += -ratio * (interface_[i + 1][j] - interface_[i][j]) + dt * s[j];
    }
  }
  state.time += dt;

  if (model_.family == ClosureFamily::PN) return diag;

  for (std::size_t i = 0; i < cells; ++i) {
    MomentVector& u = state.cells[i];
    if (!(u.density() > 0.0)) {
      throw RealizabilityLost("cell " + std::to_string(i) + " lost positive density at t = " +
                                  std::to_string(state.time),
                              i, -std::numeric_limits<double>::infinity());
    }
    const double slack = realizability_slack(u);
    diag.min_slack = std::min(diag.min_slack, slack);
    if (slack >= 0.0) continue;
    if (slack <= -kRescueSlack) {
      throw RealizabilityLost("cell " + std::to_string(i) + " left the realizable set at t = " +
                                  std::to_string(state.time) + " (normalized slack " +
                                  std::to_string(slack) + ")",
                              i, slack);
    }
    const MomentBounds b = moment_bounds_unchecked(u.truncated(n - 1));
    u[n] = std::clamp(u[n], b.lower, b.upper);
    ++diag.rescued_cells;
  }
  return diag;
}

SolverState step(const SolverState& state, double dt, const Grid& grid,
                 const MaterialField& materials, const BoundaryMoments& boundary) {
  Stepper stepper(grid, materials, boundary, state.model);
  SolverState next = state;
  stepper.step(next, dt);
  return next;
}

}  // namespace kershaw
