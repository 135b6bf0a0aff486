#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "kershaw/moments.hpp"
#include "kershaw/quadrature.hpp"

namespace kershaw {

/// Lagrange multipliers alpha_0..alpha_N of the Maxwell-Boltzmann dual; the
/// ansatz is psi(mu) = exp(sum_j alpha_j mu^j).
struct Multipliers {
  std::vector<double> alpha;
};

struct DualSolveOptions {
  /// Stop when |grad|_2 <= tol * u_0.
  double tol = 1e-10;
  std::size_t max_iter = 50;
  /// Armijo sufficient-decrease constant; the step is halved on failure.
  double armijo = 1e-4;
  /// States with normalized slack below this are blended towards the
  /// isotropic point before solving.
  double boundary_slack = 1e-8;
  double boundary_blend = 1e-7;
};

struct DualSolveResult {
  Multipliers multipliers;
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
  /// True if the input was blended towards the isotropic point.
  bool regularized = false;
};

/// Minimum-entropy (M_N) closure on a fixed Gauss-Legendre rule.
class MinimumEntropyClosure {
 public:
  explicit MinimumEntropyClosure(std::size_t order);
  MinimumEntropyClosure(std::size_t order, QuadratureRule rule);

  std::size_t order() const noexcept { return order_; }
  const QuadratureRule& rule() const noexcept { return rule_; }

  /// Damped Newton with Armijo backtracking on
  ///   <exp(b^T alpha)> - u^T alpha.
  /// Starts from `start` if given, else alpha = (log(u_0/2), 0, ..., 0).
  /// Throws NonPositiveDensity, NotRealizable, or NoConvergence (the message
  /// carries the gradient-norm trace).
  DualSolveResult solve(const MomentVector& u, const DualSolveOptions& options = {},
                        const Multipliers* start = nullptr) const;

  /// <mu^j exp(b^T alpha)> for j = 0..order.
  MomentVector ansatz_moments(const Multipliers& m, std::size_t order) const;

  /// u_{N+1} of the ansatz.
  double close(const Multipliers& m) const;

  /// Dual gradient <b exp(b^T alpha)> - u.
  Eigen::VectorXd gradient(const MomentVector& u, const Multipliers& m) const;

  /// Dual Hessian <b b^T exp(b^T alpha)>.
  Eigen::MatrixXd hessian(const Multipliers& m) const;

  /// grad_u u_{N+1} = H^{-1} <b mu^{N+1} exp(b^T alpha)>.
  Eigen::VectorXd closing_gradient(const Multipliers& m) const;

 private:
  std::size_t order_;
  QuadratureRule rule_;
  /// powers_(i, j) = node_i^j for j = 0..order+2.
  Eigen::MatrixXd powers_;

  Eigen::VectorXd ansatz_at_nodes(const Multipliers& m) const;
};

Multipliers mn_solve_dual(const MomentVector& u, double tol, std::size_t max_iter);

double mn_close(const MomentVector& u, const Multipliers& m);

}  // namespace kershaw
