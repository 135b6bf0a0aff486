#include "kershaw/realizability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kershaw/errors.hpp"

namespace kershaw {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Hankel matrix (m_{i+j+shift})_{i,j=0..size-1} of an arbitrary sequence.
template <typename Seq>
MatrixXd hankel(const Seq& m, std::size_t size, std::size_t shift = 0) {
  MatrixXd h(size, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) h(i, j) = m[i + j + shift];
  return h;
}

double min_eigenvalue(const MatrixXd& m) {
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  if (m.rows() == 1) return m(0, 0);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

/// Singular relative to max(trace, mass): localized matrices of a nearly
/// atomic measure can have a tiny trace while the measure itself does not.
bool is_singular(const MatrixXd& m, double sing_tol, double mass) {
  if (m.size() == 0) return false;
  const double scale = std::max(std::abs(m.trace()), mass);
  return min_eigenvalue(m) < sing_tol * scale || scale == 0.0;
}

/// b^T M^+ b evaluated on the numerical range of the symmetric PSD matrix M.
double range_quadratic_form(const MatrixXd& m, const VectorXd& b, double sing_tol,
                            double mass) {
  if (m.size() == 0) return 0.0;
  const double cutoff = sing_tol * std::max(std::abs(m.trace()), mass);
  if (m.rows() == 1) {
    const double a = m(0, 0);
    return a > cutoff && a > 0.0 ? b(0) * b(0) / a : 0.0;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
  const VectorXd proj = es.eigenvectors().transpose() * b;
  double q = 0.0;
  for (Eigen::Index i = 0; i < proj.size(); ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda > cutoff && lambda > 0.0) q += proj(i) * proj(i) / lambda;
  }
  return q;
}

/// Localized moment sequences m_j = <w(mu) mu^j psi>.
enum class Weight { One, OnePlus, OneMinus, OneMinusSquare };

std::vector<double> localized(const MomentVector& u, Weight w) {
  const std::size_t n = u.size();
  std::vector<double> m;
  switch (w) {
    case Weight::One:
      m.assign(u.values().begin(), u.values().end());
      break;
    case Weight::OnePlus:
      for (std::size_t j = 0; j + 1 < n; ++j) m.push_back(u[j] + u[j + 1]);
      break;
    case Weight::OneMinus:
      for (std::size_t j = 0; j + 1 < n; ++j) m.push_back(u[j] - u[j + 1]);
      break;
    case Weight::OneMinusSquare:
      for (std::size_t j = 0; j + 2 < n; ++j) m.push_back(u[j] - u[j + 2]);
      break;
  }
  return m;
}

/// The realizability test matrices at "level" r (see HankelRank).
struct LevelMatrix {
  Weight weight;
  MatrixXd matrix;
};

std::vector<LevelMatrix> level_matrices(const MomentVector& u, std::size_t r) {
  const std::size_t n = u.order();
  std::vector<LevelMatrix> out;
  if (r >= 1 && 2 * r - 1 <= n) {
    // (A -+ B)(r-1): localizing matrices of 1 -+ mu, size r.
    out.push_back({Weight::OnePlus, hankel(localized(u, Weight::OnePlus), r)});
    out.push_back({Weight::OneMinus, hankel(localized(u, Weight::OneMinus), r)});
  }
  if (2 * r <= n) {
    out.push_back({Weight::One, hankel(u.values(), r + 1)});
    // A(r-1) - C(r): localizing matrix of 1 - mu^2, size r.
    if (r >= 1) {
      out.push_back({Weight::OneMinusSquare, hankel(localized(u, Weight::OneMinusSquare), r)});
    }
  }
  return out;
}

BoundaryKind boundary_of(Weight w) {
  return (w == Weight::One || w == Weight::OnePlus) ? BoundaryKind::Lower : BoundaryKind::Upper;
}

std::vector<double> polynomial_roots(const VectorXd& gamma) {
  // Monic g(mu) = mu^s - sum_i gamma_i mu^i via its companion matrix.
  const Eigen::Index s = gamma.size();
  if (s == 0) return {};
  if (s == 1) return {gamma(0)};
  MatrixXd companion = MatrixXd::Zero(s, s);
  for (Eigen::Index i = 1; i < s; ++i) companion(i, i - 1) = 1.0;
  companion.col(s - 1) = gamma;
  Eigen::EigenSolver<MatrixXd> es(companion, false);
  std::vector<double> roots;
  for (Eigen::Index i = 0; i < s; ++i) {
    const auto z = es.eigenvalues()(i);
    if (std::abs(z.imag()) > 1e-9) {
      throw ReconstructionFailed("generating polynomial has a complex root (imaginary part " +
                                 std::to_string(z.imag()) + ")");
    }
    roots.push_back(z.real());
  }
  return roots;
}

}  // namespace

HankelSet build_hankel(const MomentVector& u, std::size_t k) {
  if (2 * k > u.order()) {
    throw OrderTooLow("A(" + std::to_string(k) + ") needs u_" + std::to_string(2 * k) +
                      " but the moment vector has order " + std::to_string(u.order()));
  }
  HankelSet h;
  h.k = k;
  h.A = hankel(u.values(), k + 1);
  if (2 * k + 1 <= u.order()) h.B = hankel(u.values(), k + 1, 1);
  h.C = hankel(u.values(), k, 2);
  return h;
}

double min_test_eigenvalue(const MomentVector& u) {
  const std::size_t n = u.order();
  if (n == 0) return u[0];
  const std::size_t k = n / 2;
  if (n % 2 == 1) {
    return std::min(min_eigenvalue(hankel(localized(u, Weight::OneMinus), k + 1)),
                    min_eigenvalue(hankel(localized(u, Weight::OnePlus), k + 1)));
  }
  return std::min(min_eigenvalue(hankel(u.values(), k + 1)),
                  min_eigenvalue(hankel(localized(u, Weight::OneMinusSquare), k)));
}

bool is_realizable(const MomentVector& u, double tol) {
  const auto v = u.values();
  if (std::any_of(v.begin(), v.end(), [](double x) { return !std::isfinite(x); })) return false;
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) return true;
  if (!(u.density() > 0.0)) return false;

  const std::size_t n = u.order();
  if (n == 0) return true;
  const std::size_t k = n / 2;
  std::vector<MatrixXd> tests;
  if (n % 2 == 1) {
    tests.push_back(hankel(localized(u, Weight::OneMinus), k + 1));
    tests.push_back(hankel(localized(u, Weight::OnePlus), k + 1));
  } else {
    tests.push_back(hankel(u.values(), k + 1));
    tests.push_back(hankel(localized(u, Weight::OneMinusSquare), k));
  }
  for (const auto& m : tests) {
    if (m.size() == 0) continue;
    const double entry = m.cwiseAbs().maxCoeff();
    if (min_eigenvalue(m) < -tol * (1.0 + entry)) return false;
  }
  return true;
}

double realizability_slack(const MomentVector& u) {
  if (!(u.density() > 0.0)) return -std::numeric_limits<double>::infinity();
  return min_test_eigenvalue((1.0 / u.density()) * u);
}

MomentBounds moment_bounds_unchecked(const MomentVector& u, double sing_tol) {
  const std::size_t n = u.order();
  if (n == 0) return {-u[0], u[0]};
  const std::size_t k = n / 2;
  MomentBounds bounds;
  if (n % 2 == 1) {
    // Upper: 1 - mu^2 localizing matrix of size k.
    const auto m2 = localized(u, Weight::OneMinusSquare);
    VectorXd b_minus(k);
    for (std::size_t i = 0; i < k; ++i) b_minus(i) = m2[k + i];
    bounds.upper = u[n - 1] - range_quadratic_form(hankel(m2, k), b_minus, sing_tol, u[0]);
    // Lower: A(k) with b_+ = (u_{k+1}, ..., u_N).
    VectorXd b_plus(k + 1);
    for (std::size_t i = 0; i <= k; ++i) b_plus(i) = u[k + 1 + i];
    bounds.lower = range_quadratic_form(hankel(u.values(), k + 1), b_plus, sing_tol, u[0]);
  } else {
    const auto mm = localized(u, Weight::OneMinus);
    const auto mp = localized(u, Weight::OnePlus);
    VectorXd b_minus(k), b_plus(k);
    for (std::size_t i = 0; i < k; ++i) {
      b_minus(i) = mm[k + i];
      b_plus(i) = mp[k + i];
    }
    bounds.upper = u[n] - range_quadratic_form(hankel(mm, k), b_minus, sing_tol, u[0]);
    bounds.lower = -u[n] + range_quadratic_form(hankel(mp, k), b_plus, sing_tol, u[0]);
  }
  return bounds;
}

MomentBounds moment_bounds(const MomentVector& u, double tol, double sing_tol) {
  if (!(u.density() > 0.0) || !is_realizable((1.0 / u.density()) * u, tol)) {
    throw NotRealizable("moment_bounds: input of order " + std::to_string(u.order()) +
                        " is not realizable (normalized slack " +
                        std::to_string(realizability_slack(u)) + ")");
  }
  return moment_bounds_unchecked(u, sing_tol);
}

HankelRank hankel_rank(const MomentVector& u, double sing_tol) {
  for (std::size_t r = 0;; ++r) {
    const auto level = level_matrices(u, r);
    if (level.empty()) break;
    for (const auto& lm : level) {
      if (is_singular(lm.matrix, sing_tol, u[0])) return {r, false, boundary_of(lm.weight)};
    }
  }
  return {u.order() / 2 + 1, true, BoundaryKind::Interior};
}

MomentVector AtomicMeasure::moments(std::size_t order) const {
  MomentVector u(order);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    double p = densities[i];
    for (std::size_t j = 0; j <= order; ++j) {
      u[j] += p;
      p *= atoms[i];
    }
  }
  return u;
}

AtomicMeasure reconstruct_atomic(const MomentVector& u, double sing_tol) {
  if (!(u.density() > 0.0)) {
    throw NonPositiveDensity("reconstruct_atomic needs u_0 > 0");
  }
  const std::size_t n = u.order();

  // Find the first prefix u_0..u_p that sits on a realizability boundary.
  Weight weight = Weight::One;
  std::size_t size = 0;  // size of the singular localized Hankel matrix
  bool found = false;
  for (std::size_t p = 1; p <= n && !found; ++p) {
    const std::size_t k = p / 2;
    std::vector<std::pair<Weight, std::size_t>> candidates;
    if (p % 2 == 1) {
      candidates = {{Weight::OnePlus, k + 1}, {Weight::OneMinus, k + 1}};
    } else {
      candidates = {{Weight::One, k + 1}, {Weight::OneMinusSquare, k}};
    }
    for (const auto& [w, s] : candidates) {
      if (s == 0) continue;
      if (is_singular(hankel(localized(u, w), s), sing_tol, u[0])) {
        weight = w;
        size = s;
        found = true;
        break;
      }
    }
  }
  if (!found) {
    // Lower principal representation: u_{N+1} = f_low.
    const std::size_t p = n + 1;
    const std::size_t k = p / 2;
    weight = p % 2 == 1 ? Weight::OnePlus : Weight::One;
    size = k + 1;
  }

  // Generating polynomial of the localized measure: its Hankel matrix of
  // size `size` is singular, the leading block of size s = size-1 is not.
  const auto m = localized(u, weight);
  const std::size_t s = size - 1;
  std::vector<double> atoms;
  if (s > 0) {
    const MatrixXd h = hankel(m, s);
    VectorXd v(s);
    for (std::size_t i = 0; i < s; ++i) v(i) = m[s + i];
    const VectorXd gamma = h.ldlt().solve(v);
    atoms = polynomial_roots(gamma);
  }
  if (weight == Weight::OnePlus || weight == Weight::OneMinusSquare) atoms.push_back(-1.0);
  if (weight == Weight::OneMinus || weight == Weight::OneMinusSquare) atoms.push_back(1.0);

  constexpr double kRootTol = 1e-9;
  for (double& a : atoms) {
    if (a < -1.0 - kRootTol || a > 1.0 + kRootTol) {
      throw ReconstructionFailed("atom " + std::to_string(a) + " lies outside [-1, 1]");
    }
    a = std::clamp(a, -1.0, 1.0);
  }
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              atoms.end());

  // Vandermonde system sum_i rho_i mu_i^j = u_j, j = 0..r-1.
  const auto r = static_cast<Eigen::Index>(atoms.size());
  if (static_cast<std::size_t>(r) > n + 1) {
    throw ReconstructionFailed("reconstruction needs " + std::to_string(r) +
                               " atoms but only " + std::to_string(n + 1) + " moments are known");
  }
  MatrixXd vander(r, r);
  VectorXd rhs(r);
  for (Eigen::Index j = 0; j < r; ++j) {
    rhs(j) = u[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < r; ++i) vander(j, i) = std::pow(atoms[i], static_cast<double>(j));
  }
  const VectorXd rho = vander.colPivHouseholderQr().solve(rhs);

  AtomicMeasure measure;
  for (Eigen::Index i = 0; i < r; ++i) {
    if (rho(i) < -1e-12 * u.density()) {
      throw ReconstructionFailed("negative density " + std::to_string(rho(i)) + " at atom " +
                                 std::to_string(atoms[i]));
    }
    if (rho(i) > 0.0) {
      measure.atoms.push_back(atoms[i]);
      measure.densities.push_back(rho(i));
    }
  }

  const MomentVector back = measure.moments(n);
  for (std::size_t j = 0; j <= n; ++j) {
    if (std::abs(back[j] - u[j]) > 1e-10 * u.density()) {
      throw ReconstructionFailed("reconstructed measure misses u_" + std::to_string(j) + " by " +
                                 std::to_string(std::abs(back[j] - u[j])));
    }
  }
  return measure;
}

}  // namespace kershaw
