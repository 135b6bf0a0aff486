#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "kershaw/moments.hpp"

namespace kershaw {

/// Relative spectral cutoff below which a symmetric matrix is treated as
/// singular (relative to its trace).
inline constexpr double kSingularityTol = 1e-10;

/// Hankel matrices of a moment vector:
///   A(k) = (u_{i+j})_{i,j=0..k}, B(k) = (u_{i+j+1})_{i,j=0..k},
///   C(k) = (u_{i+j})_{i,j=1..k}.
/// B and C are present only when u carries the moments they name.
struct HankelSet {
  std::size_t k = 0;
  Eigen::MatrixXd A;
  std::optional<Eigen::MatrixXd> B;
  std::optional<Eigen::MatrixXd> C;
};

/// Throws OrderTooLow when u lacks u_{2k}.
HankelSet build_hankel(const MomentVector& u, std::size_t k);

/// Smallest eigenvalue over the matrices whose positive semidefiniteness
/// characterizes realizability on [-1, 1]:
///   N = 2k+1: A(k) - B(k), A(k) + B(k)
///   N = 2k:   A(k), A(k-1) - C(k)
/// For N = 0 this is u_0.
double min_test_eigenvalue(const MomentVector& u);

/// Truncated Hausdorff test on [-1, 1] with eigenvalue slack
/// >= -tol * (1 + max |matrix entry|). The zero vector is accepted.
bool is_realizable(const MomentVector& u, double tol = 1e-12);

/// min_test_eigenvalue of u / u_0 (scale-free); -inf when u_0 <= 0.
double realizability_slack(const MomentVector& u);

/// Range [lower, upper] of u_{N+1} for which (u, u_{N+1}) stays realizable.
struct MomentBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Bounds on the next moment. Quadratic forms are evaluated as w^T M w with
/// M w = b solved on the numerical range of M (spectral cutoff sing_tol).
/// Throws NotRealizable if u fails is_realizable(u, tol).
MomentBounds moment_bounds(const MomentVector& u, double tol = 1e-9,
                           double sing_tol = kSingularityTol);

/// Same as moment_bounds without the realizability pre-check.
MomentBounds moment_bounds_unchecked(const MomentVector& u,
                                     double sing_tol = kSingularityTol);

enum class BoundaryKind { Interior, Lower, Upper };

/// Index of the first degenerate level of the Hankel hierarchy.
///
/// Level r consists of A(r) and the localizing matrices of size r
/// ((A -+ B)(r-1) and A(r-1) - C(r)) that u carries. For a lower-boundary
/// vector the first singular matrix is A(r) and r equals the number of atoms.
/// Vectors whose hierarchy never degenerates report floor(N/2)+1 and
/// interior = true.
struct HankelRank {
  std::size_t rank = 0;
  bool interior = true;
  BoundaryKind boundary = BoundaryKind::Interior;
};

HankelRank hankel_rank(const MomentVector& u, double sing_tol = kSingularityTol);

/// psi = sum_i densities[i] * delta(mu - atoms[i]), atoms strictly increasing.
struct AtomicMeasure {
  std::vector<double> atoms;
  std::vector<double> densities;

  std::size_t size() const noexcept { return atoms.size(); }
  /// Exact moments sum_i rho_i mu_i^j, j = 0..order.
  MomentVector moments(std::size_t order) const;
};

/// Minimal atomic representing measure.
///
/// The first prefix u_0..u_n lying on a realizability boundary fixes the
/// measure: its support is the root set of the generating polynomial of the
/// localized moments (weight 1, 1+mu, 1-mu or 1-mu^2, depending on which
/// boundary is hit) together with the roots of the weight. Interior vectors
/// are first extended by u_{N+1} = f_low (the lower principal
/// representation; for odd N this is the determinate Gauss-type measure).
/// Densities solve the Vandermonde system on u_0..u_{r-1}.
///
/// Throws ReconstructionFailed if a root leaves [-1, 1] by more than 1e-9,
/// a density is below -1e-12 u_0, or the result misses u_0..u_N by more
/// than 1e-10 u_0.
AtomicMeasure reconstruct_atomic(const MomentVector& u,
                                 double sing_tol = kSingularityTol);

}  // namespace kershaw
