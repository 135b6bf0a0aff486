#include "kershaw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kershaw/errors.hpp"

namespace kershaw {

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> weights,
                               std::size_t degree)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), degree_(degree) {
  if (nodes_.size() != weights_.size() || nodes_.empty()) {
    throw Error("quadrature rule needs matching, non-empty nodes and weights");
  }
}

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw Error("Gauss-Legendre rule needs at least one node");
  std::vector<double> nodes(n), weights(n);
  const double pi = std::numbers::pi;
  // Roots are symmetric; compute the positive half by Newton on P_n.
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
  return QuadratureRule(std::move(nodes), std::move(weights), 2 * n - 1);
}

std::size_t entropy_quadrature_size(std::size_t order) {
  return std::max<std::size_t>(30, 2 * order + 10);
}

}  // namespace kershaw
