#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "kershaw/moments.hpp"

namespace kershaw {

/// Change of basis between Legendre moments <P_j psi> and monomial moments
/// <mu^j psi>.
///
/// The lower-triangular coefficient matrix of P_0..P_N has entries growing
/// like 2^N while the moments stay O(1), so both directions are carried out
/// in 100-digit binary floating point and rounded back once. Round trips are
/// then the identity to double rounding for N up to a few hundred.
class LegendreTransform {
 public:
  explicit LegendreTransform(std::size_t order);

  std::size_t order() const noexcept { return order_; }

  MomentVector to_monomial(const MomentVector& legendre) const;
  MomentVector to_legendre(const MomentVector& monomial) const;

  /// Coefficient of mu^i in P_j, rounded to double.
  double coefficient(std::size_t j, std::size_t i) const;

 private:
  struct Impl;
  std::size_t order_;
  std::shared_ptr<const Impl> impl_;
};

MomentVector legendre_to_monomial(const MomentVector& legendre);
MomentVector monomial_to_legendre(const MomentVector& monomial);

/// P_0(x)..P_order(x) by three-term recurrence.
std::vector<double> legendre_values(std::size_t order, double x);

}  // namespace kershaw
