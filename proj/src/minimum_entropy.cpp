#include "kershaw/minimum_entropy.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "kershaw/errors.hpp"
#include "kershaw/realizability.hpp"

namespace kershaw {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MinimumEntropyClosure::MinimumEntropyClosure(std::size_t order)
    : MinimumEntropyClosure(order, gauss_legendre(entropy_quadrature_size(order))) {}

MinimumEntropyClosure::MinimumEntropyClosure(std::size_t order, QuadratureRule rule)
    : order_(order), rule_(std::move(rule)) {
  const auto nodes = static_cast<Eigen::Index>(rule_.size());
  const auto cols = static_cast<Eigen::Index>(order_ + 3);
  powers_.resize(nodes, cols);
  for (Eigen::Index i = 0; i < nodes; ++i) {
    double p = 1.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
      powers_(i, j) = p;
      p *= rule_.nodes()[static_cast<std::size_t>(i)];
    }
  }
}

VectorXd MinimumEntropyClosure::ansatz_at_nodes(const Multipliers& m) const {
  const auto dim = static_cast<Eigen::Index>(order_ + 1);
  const Eigen::Map<const VectorXd> alpha(m.alpha.data(), dim);
  VectorXd psi = (powers_.leftCols(dim) * alpha).array().exp();
  return psi;
}

MomentVector MinimumEntropyClosure::ansatz_moments(const Multipliers& m, std::size_t order) const {
  const VectorXd psi = ansatz_at_nodes(m);
  MomentVector u(order);
  const auto& mu = rule_.nodes();
  const auto& w = rule_.weights();
  for (std::size_t i = 0; i < rule_.size(); ++i) {
    double p = w[i] * psi(static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j <= order; ++j) {
      u[j] += p;
      p *= mu[i];
    }
  }
  return u;
}

double MinimumEntropyClosure::close(const Multipliers& m) const {
  return ansatz_moments(m, order_ + 1)[order_ + 1];
}

VectorXd MinimumEntropyClosure::gradient(const MomentVector& u, const Multipliers& m) const {
  const MomentVector a = ansatz_moments(m, order_);
  VectorXd g(static_cast<Eigen::Index>(order_ + 1));
  for (std::size_t j = 0; j <= order_; ++j) g(static_cast<Eigen::Index>(j)) = a[j] - u[j];
  return g;
}

MatrixXd MinimumEntropyClosure::hessian(const Multipliers& m) const {
  const MomentVector a = ansatz_moments(m, 2 * order_);
  const auto dim = static_cast<Eigen::Index>(order_ + 1);
  MatrixXd h(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) h(i, j) = a[static_cast<std::size_t>(i + j)];
  return h;
}

VectorXd MinimumEntropyClosure::closing_gradient(const Multipliers& m) const {
  const MomentVector a = ansatz_moments(m, 2 * order_ + 1);
  const auto dim = static_cast<Eigen::Index>(order_ + 1);
  VectorXd c(dim);
  for (Eigen::Index j = 0; j < dim; ++j) c(j) = a[static_cast<std::size_t>(j) + order_ + 1];
  return hessian(m).ldlt().solve(c);
}

DualSolveResult MinimumEntropyClosure::solve(const MomentVector& u_in,
                                             const DualSolveOptions& options,
                                             const Multipliers* start) const {
  if (u_in.order() != order_) {
    throw Error("M" + std::to_string(order_) + " dual given moments of order " +
                std::to_string(u_in.order()));
  }
  if (!(u_in.density() > 0.0)) {
    throw NonPositiveDensity("M_N dual needs u_0 > 0, got " + std::to_string(u_in.density()));
  }
  DualSolveResult result;
  MomentVector u = u_in;
  const double slack = realizability_slack(u);
  if (slack < -1e-9) {
    throw NotRealizable("M_N dual: moments are not realizable (slack " + std::to_string(slack) + ")");
  }
  if (slack < options.boundary_slack) {
    const double eps = options.boundary_blend;
    u = (1.0 - eps) * u + eps * isotropic_moments(order_, u.density());
    result.regularized = true;
    if (realizability_slack(u) <= 0.0) {
      throw BoundaryMoment("M_N dual: moments sit on the realizability boundary");
    }
  }

  const auto dim = static_cast<Eigen::Index>(order_ + 1);
  Multipliers m;
  if (start != nullptr && start->alpha.size() == order_ + 1) {
    m = *start;
  } else {
    m.alpha.assign(order_ + 1, 0.0);
    m.alpha[0] = std::log(u.density() / 2.0);
  }

  const VectorXd uvec = Eigen::Map<const VectorXd>(u.values().data(), dim);
  auto objective = [&](const Multipliers& a) {
    const VectorXd psi = ansatz_at_nodes(a);
    double s = 0.0;
    for (std::size_t i = 0; i < rule_.size(); ++i) s += rule_.weights()[i] * psi(static_cast<Eigen::Index>(i));
    const Eigen::Map<const VectorXd> alpha(a.alpha.data(), dim);
    return s - uvec.dot(alpha);
  };

  std::vector<double> trace;
  double f = objective(m);
  for (std::size_t it = 0; it <= options.max_iter; ++it) {
    const VectorXd g = gradient(u, m);
    const double gnorm = g.norm();
    trace.push_back(gnorm);
    if (gnorm <= options.tol * u.density()) {
      result.multipliers = std::move(m);
      result.iterations = it;
      result.gradient_norm = gnorm;
      return result;
    }
    if (it == options.max_iter) break;

    const MatrixXd h = hessian(m);
    const VectorXd d = -h.ldlt().solve(g);
    const double slope = g.dot(d);

    double t = 1.0;
    Multipliers trial = m;
    bool accepted = false;
    // Inside the quadratic region the decrease drops below the rounding of f;
    // take the full Newton step there.
    const Eigen::Map<const VectorXd> alpha(m.alpha.data(), dim);
    if (-slope <= 1e-13 * (std::abs(f) + std::abs(uvec.dot(alpha)))) {
      for (Eigen::Index j = 0; j < dim; ++j) trial.alpha[static_cast<std::size_t>(j)] += d(j);
      f = objective(trial);
      m = trial;
      continue;
    }
    for (int ls = 0; ls < 60; ++ls) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        trial.alpha[static_cast<std::size_t>(j)] = m.alpha[static_cast<std::size_t>(j)] + t * d(j);
      }
      const double ft = objective(trial);
      if (std::isfinite(ft) &&
          ft <= f + options.armijo * t * slope) {
        f = ft;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    m = trial;
  }

  std::ostringstream msg;
  msg << "M" << order_ << " dual did not converge in " << options.max_iter
      << " iterations for u = (";
  msg.precision(17);
  for (std::size_t j = 0; j <= order_; ++j) msg << (j ? ", " : "") << u_in[j];
  msg.precision(6);
  msg << "); gradient norms:";
  for (double gn : trace) msg << ' ' << gn;
  if (result.regularized) {
    throw BoundaryMoment(msg.str() + " (state regularized off the realizability boundary)");
  }
  throw NoConvergence(msg.str());
}

Multipliers mn_solve_dual(const MomentVector& u, double tol, std::size_t max_iter) {
  DualSolveOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  return MinimumEntropyClosure(u.order()).solve(u, opts).multipliers;
}

double mn_close(const MomentVector& u, const Multipliers& m) {
  return MinimumEntropyClosure(u.order()).close(m);
}

}  // namespace kershaw
