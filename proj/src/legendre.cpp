#include "kershaw/legendre.hpp"

#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "kershaw/errors.hpp"

namespace kershaw {

namespace {
using Wide = boost::multiprecision::cpp_bin_float_100;
}  // namespace

struct LegendreTransform::Impl {
  // coeff[j][i]: coefficient of mu^i in P_j, i <= j.
  std::vector<std::vector<Wide>> coeff;
};

LegendreTransform::LegendreTransform(std::size_t order) : order_(order) {
  auto impl = std::make_shared<Impl>();
  auto& c = impl->coeff;
  c.resize(order + 1);
  c[0] = {Wide(1)};
  if (order >= 1) c[1] = {Wide(0), Wide(1)};
  for (std::size_t j = 1; j < order; ++j) {
    // P_{j+1} = ((2j+1) mu P_j - j P_{j-1}) / (j+1)
    std::vector<Wide> next(j + 2, Wide(0));
    const Wide a = Wide(2 * j + 1) / Wide(j + 1);
    const Wide b = Wide(j) / Wide(j + 1);
    for (std::size_t i = 0; i <= j; ++i) next[i + 1] += a * c[j][i];
    for (std::size_t i = 0; i + 1 <= j; ++i) next[i] -= b * c[j - 1][i];
    c[j + 1] = std::move(next);
  }
  impl_ = std::move(impl);
}

MomentVector LegendreTransform::to_legendre(const MomentVector& monomial) const {
  if (monomial.order() != order_) {
    throw Error("Legendre transform of order " + std::to_string(order_) +
                " applied to moments of order " + std::to_string(monomial.order()));
  }
  MomentVector out(order_);
  for (std::size_t j = 0; j <= order_; ++j) {
    Wide s(0);
    for (std::size_t i = 0; i <= j; ++i) s += impl_->coeff[j][i] * Wide(monomial[i]);
    out[j] = static_cast<double>(s);
  }
  return out;
}

MomentVector LegendreTransform::to_monomial(const MomentVector& legendre) const {
  if (legendre.order() != order_) {
    throw Error("Legendre transform of order " + std::to_string(order_) +
                " applied to moments of order " + std::to_string(legendre.order()));
  }
  // Forward substitution on the lower-triangular coefficient matrix.
  std::vector<Wide> u(order_ + 1);
  MomentVector out(order_);
  for (std::size_t j = 0; j <= order_; ++j) {
    Wide s(legendre[j]);
    for (std::size_t i = 0; i < j; ++i) s -= impl_->coeff[j][i] * u[i];
    u[j] = s / impl_->coeff[j][j];
    out[j] = static_cast<double>(u[j]);
  }
  return out;
}

double LegendreTransform::coefficient(std::size_t j, std::size_t i) const {
  if (j > order_ || i > j) return 0.0;
  return static_cast<double>(impl_->coeff[j][i]);
}

MomentVector legendre_to_monomial(const MomentVector& legendre) {
  return LegendreTransform(legendre.order()).to_monomial(legendre);
}

MomentVector monomial_to_legendre(const MomentVector& monomial) {
  return LegendreTransform(monomial.order()).to_legendre(monomial);
}

std::vector<double> legendre_values(std::size_t order, double x) {
  std::vector<double> p(order + 1);
  p[0] = 1.0;
  if (order >= 1) p[1] = x;
  for (std::size_t j = 1; j < order; ++j) {
    const double jj = static_cast<double>(j);
    p[j + 1] = ((2.0 * jj + 1.0) * x * p[j] - jj * p[j - 1]) / (jj + 1.0);
  }
  return p;
}

}  // namespace kershaw
