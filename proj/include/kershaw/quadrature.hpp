#pragma once

#include <cstddef>
#include <vector>

namespace kershaw {

/// Nodes in [-1, 1] with positive weights.
class QuadratureRule {
 public:
  QuadratureRule(std::vector<double> nodes, std::vector<double> weights,
                 std::size_t degree);

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  /// Highest monomial degree integrated exactly.
  std::size_t degree() const noexcept { return degree_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::size_t degree_;
};

/// n-point Gauss-Legendre rule (exact to degree 2n-1), nodes ascending.
QuadratureRule gauss_legendre(std::size_t n);

/// Node count used for minimum-entropy integrals of order N.
std::size_t entropy_quadrature_size(std::size_t order);

}  // namespace kershaw
