#include "kershaw/closures.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "kershaw/errors.hpp"
#include "kershaw/legendre.hpp"
#include "kershaw/minimum_entropy.hpp"
#include "kershaw/realizability.hpp"

namespace kershaw {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Closed forms are used only while their denominators stay above this.
constexpr double kClosedFormMargin = 1e-6;

// Normalized slack below which Kershaw K_N (N >= 3) and M_N Jacobians are
// not evaluated.
constexpr double kDegenerateSlack = 1e-8;

void require_order(std::size_t order) {
  if (order < 1) throw Error("closures need order N >= 1");
}

/// b^T M^{-1} b for a 2x2 symmetric M.
double quadratic_form_2x2(double m11, double m12, double m22, double b1, double b2) {
  const double det = m11 * m22 - m12 * m12;
  return (m22 * b1 * b1 - 2.0 * m12 * b1 * b2 + m11 * b2 * b2) / det;
}

}  // namespace

std::string ClosureKind::name() const {
  const char* prefix = family == ClosureFamily::Kershaw ? "K" : family == ClosureFamily::PN ? "P" : "M";
  return prefix + std::to_string(order);
}

double interpolation_constant(std::size_t order) {
  require_order(order);
  if (order % 2 == 0) return 0.5;
  const double k = static_cast<double>((order - 1) / 2);
  return (k + 2.0) / (2.0 * k + 3.0);
}

double interpolation_constant_from_bounds(std::size_t order) {
  require_order(order);
  const MomentVector iso = isotropic_moments(order, 1.0);
  const MomentBounds b = moment_bounds(iso);
  const double target = 0.5 * monomial_integral(order + 1);
  return (target - b.upper) / (b.lower - b.upper);
}

std::optional<double> kershaw_close_closed_form(const NormalizedMoments& phi) {
  const std::size_t n = phi.order();
  switch (n) {
    case 1: {
      const double p1 = phi[1];
      return 2.0 / 3.0 * p1 * p1 + 1.0 / 3.0;
    }
    case 2: {
      const double p1 = phi[1], p2 = phi[2];
      const double den = p1 * p1 - 1.0;
      if (-den < kClosedFormMargin) return std::nullopt;
      return p1 * (p1 * p1 + p2 * p2 - 2.0 * p2) / den;
    }
    case 3: {
      const double p1 = phi[1], p2 = phi[2], p3 = phi[3];
      const double up_den = 1.0 - p2;
      const double low_den = p2 - p1 * p1;
      if (up_den < kClosedFormMargin || low_den < kClosedFormMargin) return std::nullopt;
      const double upper = p2 - (p1 - p3) * (p1 - p3) / up_den;
      const double lower = (p2 * p2 * p2 - 2.0 * p1 * p2 * p3 + p3 * p3) / low_den;
      const double beta = 3.0 / 5.0;
      return beta * lower + (1.0 - beta) * upper;
    }
    case 4: {
      const double p1 = phi[1], p2 = phi[2], p3 = phi[3], p4 = phi[4];
      // (A -+ B)(1) and b_-+ in normalized moments.
      const double mm11 = 1.0 - p1, mm12 = p1 - p2, mm22 = p2 - p3;
      const double mp11 = 1.0 + p1, mp12 = p1 + p2, mp22 = p2 + p3;
      const double det_m = mm11 * mm22 - mm12 * mm12;
      const double det_p = mp11 * mp22 - mp12 * mp12;
      if (det_m < kClosedFormMargin || det_p < kClosedFormMargin) return std::nullopt;
      const double upper = p4 - quadratic_form_2x2(mm11, mm12, mm22, p2 - p3, p3 - p4);
      const double lower = -p4 + quadratic_form_2x2(mp11, mp12, mp22, p2 + p3, p3 + p4);
      return 0.5 * (lower + upper);
    }
    default:
      return std::nullopt;
  }
}

double kershaw_close_generic(const NormalizedMoments& phi) {
  require_order(phi.order());
  const MomentBounds b = moment_bounds(phi.with_unit_density());
  const double beta = interpolation_constant(phi.order());
  return beta * b.lower + (1.0 - beta) * b.upper;
}

double kershaw_close_unchecked(const NormalizedMoments& phi) {
  require_order(phi.order());
  if (auto closed = kershaw_close_closed_form(phi)) return *closed;
  const MomentBounds b = moment_bounds_unchecked(phi.with_unit_density());
  const double beta = interpolation_constant(phi.order());
  return beta * b.lower + (1.0 - beta) * b.upper;
}

double kershaw_close(const NormalizedMoments& phi) {
  require_order(phi.order());
  const MomentVector u = phi.with_unit_density();
  if (!is_realizable(u, 1e-9)) {
    throw NotRealizable("kershaw_close: normalized moments of order " +
                        std::to_string(phi.order()) + " are not realizable (slack " +
                        std::to_string(realizability_slack(u)) + ")");
  }
  return kershaw_close_unchecked(phi);
}

double kershaw_next_moment(const MomentVector& u, bool checked) {
  if (u.density() == 0.0) {
    const auto v = u.values();
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) return 0.0;
  }
  const NormalizedMoments phi = normalize(u);
  return u.density() * (checked ? kershaw_close(phi) : kershaw_close_unchecked(phi));
}

double pn_close(const MomentVector&) { return 0.0; }

MomentVector pn_flux(const MomentVector& legendre) {
  const std::size_t n = legendre.order();
  MomentVector f(n);
  for (std::size_t j = 0; j <= n; ++j) {
    const double jj = static_cast<double>(j);
    const double up = j < n ? legendre[j + 1] : pn_close(legendre);
    const double down = j > 0 ? legendre[j - 1] : 0.0;
    f[j] = ((jj + 1.0) * up + jj * down) / (2.0 * jj + 1.0);
  }
  return f;
}

namespace {

MomentVector shift_flux(const MomentVector& u, double next) {
  MomentVector f(u.order());
  for (std::size_t j = 0; j < u.order(); ++j) f[j] = u[j + 1];
  f[u.order()] = next;
  return f;
}

double mn_next_moment(const MomentVector& u) {
  const MinimumEntropyClosure closure(u.order());
  const DualSolveResult r = closure.solve(u);
  return closure.close(r.multipliers);
}

/// Last Jacobian row for the monomial-basis closures, without state checks.
VectorXd closing_gradient_raw(const ClosureKind& kind, const MomentVector& u) {
  const std::size_t n = kind.order;
  VectorXd g(n + 1);
  switch (kind.family) {
    case ClosureFamily::Kershaw: {
      if (n == 1) {
        const double p1 = u[1] / u[0];
        g << 1.0 / 3.0 - 2.0 / 3.0 * p1 * p1, 4.0 / 3.0 * p1;
        return g;
      }
      if (n == 2) {
        const double a = u[1] / u[0], b = u[2] / u[0];
        const double den = a * a - 1.0;
        g << 2.0 * a * (b - 1.0) * (b - a * a) / (den * den),
            1.0 - (b - 1.0) * (b - 1.0) / (2.0 * (a + 1.0) * (a + 1.0)) -
                (b - 1.0) * (b - 1.0) / (2.0 * (a - 1.0) * (a - 1.0)),
            2.0 * a * (b - 1.0) / den;
        return g;
      }
      const double h = 1e-6 * std::max(u[0], 1.0);
      for (std::size_t j = 0; j <= n; ++j) {
        MomentVector plus = u, minus = u;
        plus[j] += h;
        minus[j] -= h;
        g(static_cast<Eigen::Index>(j)) =
            (kershaw_next_moment(plus, false) - kershaw_next_moment(minus, false)) / (2.0 * h);
      }
      return g;
    }
    case ClosureFamily::MN: {
      const MinimumEntropyClosure closure(n);
      DualSolveOptions opts;
      opts.tol = 1e-12;
      const DualSolveResult r = closure.solve(u, opts);
      return closure.closing_gradient(r.multipliers);
    }
    case ClosureFamily::PN: {
      g.setZero();
      if (n >= 1) g(static_cast<Eigen::Index>(n - 1)) = static_cast<double>(n) / (2.0 * n + 1.0);
      return g;
    }
  }
  return g;
}

MatrixXd jacobian_matrix(const ClosureKind& kind, const MomentVector& u) {
  const std::size_t n = kind.order;
  const auto dim = static_cast<Eigen::Index>(n + 1);
  MatrixXd jac = MatrixXd::Zero(dim, dim);
  if (kind.family == ClosureFamily::PN) {
    for (std::size_t j = 0; j <= n; ++j) {
      const double jj = static_cast<double>(j);
      const auto row = static_cast<Eigen::Index>(j);
      if (j < n) jac(row, row + 1) = (jj + 1.0) / (2.0 * jj + 1.0);
      if (j > 0) jac(row, row - 1) = jj / (2.0 * jj + 1.0);
    }
    return jac;
  }
  for (Eigen::Index j = 0; j + 1 < dim; ++j) jac(j, j + 1) = 1.0;
  jac.row(dim - 1) = closing_gradient_raw(kind, u).transpose();
  return jac;
}

void check_differentiable(const ClosureKind& kind, const MomentVector& u) {
  require_order(kind.order);
  if (u.order() != kind.order) {
    throw Error("moment vector of order " + std::to_string(u.order()) + " passed to " +
                kind.name());
  }
  if (kind.family == ClosureFamily::PN) return;
  if (!(u.density() > 0.0)) throw NonPositiveDensity(kind.name() + " Jacobian needs u_0 > 0");
  const double slack = realizability_slack(u);
  if (slack < -1e-9) {
    throw NotRealizable(kind.name() + " Jacobian at a non-realizable state (slack " +
                        std::to_string(slack) + ")");
  }
  if (kind.family == ClosureFamily::Kershaw && kind.order == 2) {
    if (1.0 - std::abs(u[1] / u[0]) < 1e-8) {
      throw DegenerateState("K2 Jacobian is discontinuous at |phi_1| = 1");
    }
  } else if (kind.family == ClosureFamily::MN ||
             (kind.family == ClosureFamily::Kershaw && kind.order >= 3)) {
    if (slack < kDegenerateSlack) {
      throw DegenerateState(kind.name() + " Jacobian requested within 1e-8 of the realizability boundary");
    }
  }
}

}  // namespace

MomentVector flux(const ClosureKind& kind, const MomentVector& u) {
  require_order(kind.order);
  if (u.order() != kind.order) {
    throw Error("moment vector of order " + std::to_string(u.order()) + " passed to " +
                kind.name());
  }
  switch (kind.family) {
    case ClosureFamily::Kershaw:
      return shift_flux(u, kershaw_next_moment(u));
    case ClosureFamily::PN:
      return pn_flux(u);
    case ClosureFamily::MN:
      return shift_flux(u, mn_next_moment(u));
  }
  return u;
}

Eigen::VectorXd closing_gradient(const ClosureKind& kind, const MomentVector& u) {
  check_differentiable(kind, u);
  if (kind.family == ClosureFamily::PN) {
    return jacobian_matrix(kind, u).row(static_cast<Eigen::Index>(kind.order)).transpose();
  }
  return closing_gradient_raw(kind, u);
}

std::vector<double> real_eigenvalues(const Eigen::MatrixXd& m, double* max_imag) {
  Eigen::EigenSolver<MatrixXd> es(m, false);
  std::vector<std::complex<double>> z(es.eigenvalues().begin(), es.eigenvalues().end());
  std::sort(z.begin(), z.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  constexpr double kCluster = 1e-6;
  std::vector<double> out;
  double imag = 0.0;
  for (std::size_t i = 0; i < z.size();) {
    std::size_t j = i + 1;
    while (j < z.size() && std::abs(z[j] - z[j - 1]) < kCluster) ++j;
    std::complex<double> mean = 0.0;
    for (std::size_t l = i; l < j; ++l) mean += z[l];
    mean /= static_cast<double>(j - i);
    imag = std::max(imag, std::abs(mean.imag()));
    out.insert(out.end(), j - i, mean.real());
    i = j;
  }
  if (max_imag) *max_imag = imag;
  return out;
}

FluxJacobianReport jacobian(const ClosureKind& kind, const MomentVector& u) {
  check_differentiable(kind, u);
  FluxJacobianReport report;
  report.jacobian = jacobian_matrix(kind, u);
  report.eigenvalues = real_eigenvalues(report.jacobian, &report.max_imag);

  const auto dim = report.jacobian.rows();
  report.eigenvectors.resize(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double lambda = report.eigenvalues[static_cast<std::size_t>(i)];
    if (kind.family == ClosureFamily::PN) {
      const auto p = legendre_values(kind.order, lambda);
      for (Eigen::Index j = 0; j < dim; ++j) report.eigenvectors(j, i) = p[static_cast<std::size_t>(j)];
    } else {
      double power = 1.0;
      for (Eigen::Index j = 0; j < dim; ++j) {
        report.eigenvectors(j, i) = power;
        power *= lambda;
      }
    }
    const VectorXd v = report.eigenvectors.col(i);
    const double res = (report.jacobian * v - lambda * v).cwiseAbs().maxCoeff() /
                       v.cwiseAbs().maxCoeff();
    report.residual = std::max(report.residual, res);
  }
  return report;
}

double characteristic_field(const ClosureKind& kind, const MomentVector& u, std::size_t i) {
  const FluxJacobianReport report = jacobian(kind, u);
  if (i >= report.eigenvalues.size()) {
    throw Error("characteristic field index " + std::to_string(i) + " out of range for " +
                kind.name());
  }
  const double lambda = report.eigenvalues[i];
  const VectorXd v = report.eigenvectors.col(static_cast<Eigen::Index>(i));
  const double h = 1e-6 * std::max(u[0], 1.0) / v.cwiseAbs().maxCoeff();

  auto tracked = [&](double sign) {
    MomentVector w = u;
    for (std::size_t j = 0; j <= u.order(); ++j) w[j] += sign * h * v(static_cast<Eigen::Index>(j));
    const auto eig = real_eigenvalues(jacobian_matrix(kind, w));
    return *std::min_element(eig.begin(), eig.end(), [&](double a, double b) {
      return std::abs(a - lambda) < std::abs(b - lambda);
    });
  };
  return (tracked(1.0) - tracked(-1.0)) / (2.0 * h);
}

}  // namespace kershaw
