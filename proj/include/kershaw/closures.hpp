#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kershaw/moments.hpp"

namespace kershaw {

enum class ClosureFamily { Kershaw, PN, MN };

/// Basis in which a model's moment vectors are expressed.
enum class Basis { Monomial, Legendre };

/// A closure family together with its order N >= 1. M_N always uses the
/// Maxwell-Boltzmann entropy; P_N works on Legendre moments.
struct ClosureKind {
  ClosureFamily family = ClosureFamily::Kershaw;
  std::size_t order = 1;

  static ClosureKind kershaw(std::size_t n) { return {ClosureFamily::Kershaw, n}; }
  static ClosureKind pn(std::size_t n) { return {ClosureFamily::PN, n}; }
  static ClosureKind mn(std::size_t n) { return {ClosureFamily::MN, n}; }

  Basis basis() const noexcept {
    return family == ClosureFamily::PN ? Basis::Legendre : Basis::Monomial;
  }
  /// "K2", "P99", "M1".
  std::string name() const;

  friend bool operator==(const ClosureKind&, const ClosureKind&) = default;
};

// ---------------------------------------------------------------------------
// Kershaw K_N

/// beta = (k+2)/(2k+3) for N = 2k+1, 1/2 for N = 2k.
double interpolation_constant(std::size_t order);

/// beta from its defining condition at the isotropic point:
///   (1/2 <mu^{N+1}> - f_up(iso)) / (f_low(iso) - f_up(iso)).
double interpolation_constant_from_bounds(std::size_t order);

/// phi_{N+1} = beta f_low(phi) + (1 - beta) f_up(phi).
/// Uses the closed forms for N <= 4 where their denominators are well away
/// from zero and the bounds machinery otherwise.
double kershaw_close(const NormalizedMoments& phi);

/// Always evaluates through moment_bounds (the reference path).
double kershaw_close_generic(const NormalizedMoments& phi);

/// Closed form for N <= 4; nullopt when N > 4 or the state is too close to
/// a singular denominator.
std::optional<double> kershaw_close_closed_form(const NormalizedMoments& phi);

/// kershaw_close without the realizability check; for callers that have
/// already validated the state (the solver) or that probe just outside the
/// realizable set (finite differences).
double kershaw_close_unchecked(const NormalizedMoments& phi);

/// Unnormalized u_{N+1} = u_0 phi_{N+1}(u/u_0); zero for u_0 == 0.
double kershaw_next_moment(const MomentVector& u, bool checked = true);

// ---------------------------------------------------------------------------
// P_N

/// Closing Legendre moment of the truncation closure.
double pn_close(const MomentVector& legendre);

/// <mu P_j psi> = ((j+1) u_{j+1} + j u_{j-1}) / (2j+1) with u_{N+1} = 0.
MomentVector pn_flux(const MomentVector& legendre);

// ---------------------------------------------------------------------------
// Shared

/// F(u) = (u_1, ..., u_N, u_{N+1}) in the model's basis. For M_N the dual
/// is solved from the isotropic start; use MinimumEntropyClosure for warm
/// starts.
MomentVector flux(const ClosureKind& kind, const MomentVector& u);

/// Flux Jacobian with its eigen-decomposition.
struct FluxJacobianReport {
  Eigen::MatrixXd jacobian;
  /// Real parts, ascending.
  std::vector<double> eigenvalues;
  /// Largest |imaginary part| seen before truncation.
  double max_imag = 0.0;
  /// Column i is (1, lambda_i, ..., lambda_i^N).
  Eigen::MatrixXd eigenvectors;
  /// max_i |J v_i - lambda_i v_i|_inf / |v_i|_inf.
  double residual = 0.0;
};

/// Last row of the Jacobian: gradient of u_{N+1} with respect to u.
///   K_1, K_2: analytic;  K_N (N >= 3): central differences with
///   h = 1e-6 max(u_0, 1);  M_N: implicit-function gradient of the dual;
///   P_N: constant tridiagonal rows (full matrix returned by jacobian()).
Eigen::VectorXd closing_gradient(const ClosureKind& kind, const MomentVector& u);

/// Throws DegenerateState where the closure is not differentiable: |phi_1|
/// within 1e-8 of 1 for K_2, and within 1e-8 (normalized slack) of the
/// realizability boundary for K_N (N >= 3) and M_N.
FluxJacobianReport jacobian(const ClosureKind& kind, const MomentVector& u);

/// Eigenvalues of a real matrix, sorted ascending. Clusters closer than
/// 1e-6 are replaced by their mean (a well-conditioned quantity even when
/// the individual members of a defective cluster are not).
std::vector<double> real_eigenvalues(const Eigen::MatrixXd& m, double* max_imag = nullptr);

/// v_i . grad_u lambda_i for the i-th (0-based, ascending) eigenvalue, by
/// central differences along v_i = (1, lambda_i, ..., lambda_i^N).
double characteristic_field(const ClosureKind& kind, const MomentVector& u, std::size_t i);

}  // namespace kershaw
