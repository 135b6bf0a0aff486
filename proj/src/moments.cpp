#include "kershaw/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kershaw/errors.hpp"
#include "kershaw/quadrature.hpp"

namespace kershaw {

namespace {

void require_same_order(const MomentVector& a, const MomentVector& b) {
  if (a.order() != b.order()) {
    throw Error("moment vectors of order " + std::to_string(a.order()) + " and " +
                std::to_string(b.order()) + " cannot be combined");
  }
}

}  // namespace

MomentVector::MomentVector(std::initializer_list<double> values) : values_(values) {
  if (values_.empty()) values_.push_back(0.0);
}

MomentVector::MomentVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) values_.push_back(0.0);
}

MomentVector::MomentVector(std::span<const double> values)
    : values_(values.begin(), values.end()) {
  if (values_.empty()) values_.push_back(0.0);
}

MomentVector MomentVector::truncated(std::size_t order) const {
  if (order > this->order()) {
    throw OrderTooLow("cannot truncate a moment vector of order " +
                      std::to_string(this->order()) + " to order " + std::to_string(order));
  }
  return MomentVector(std::span<const double>(values_.data(), order + 1));
}

MomentVector MomentVector::extended(double next) const {
  std::vector<double> v = values_;
  v.push_back(next);
  return MomentVector(std::move(v));
}

MomentVector& MomentVector::operator+=(const MomentVector& other) {
  require_same_order(*this, other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

MomentVector& MomentVector::operator-=(const MomentVector& other) {
  require_same_order(*this, other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

MomentVector& MomentVector::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

NormalizedMoments::NormalizedMoments(std::vector<double> values) : values_(std::move(values)) {}

NormalizedMoments::NormalizedMoments(std::initializer_list<double> values) : values_(values) {}

MomentVector NormalizedMoments::with_unit_density() const {
  std::vector<double> v;
  v.reserve(values_.size() + 1);
  v.push_back(1.0);
  v.insert(v.end(), values_.begin(), values_.end());
  return MomentVector(std::move(v));
}

NormalizedMoments normalize(const MomentVector& u) {
  if (!(u.density() > 0.0)) {
    throw NonPositiveDensity("cannot normalize moments with u_0 = " +
                             std::to_string(u.density()));
  }
  std::vector<double> phi(u.order());
  for (std::size_t j = 1; j <= u.order(); ++j) phi[j - 1] = u[j] / u.density();
  return NormalizedMoments(std::move(phi));
}

double monomial_integral(std::size_t j) {
  return j % 2 == 0 ? 2.0 / static_cast<double>(j + 1) : 0.0;
}

MomentVector isotropic_moments(std::size_t order, double density) {
  MomentVector u(order);
  for (std::size_t j = 0; j <= order; ++j) u[j] = 0.5 * density * monomial_integral(j);
  return u;
}

MomentVector moments_of_density(std::span<const double> f, const QuadratureRule& rule,
                                std::size_t order) {
  if (f.size() != rule.size()) {
    throw Error("density has " + std::to_string(f.size()) + " samples, rule has " +
                std::to_string(rule.size()) + " nodes");
  }
  if (order > rule.degree()) {
    throw Error("moment order " + std::to_string(order) + " exceeds quadrature degree " +
                std::to_string(rule.degree()));
  }
  MomentVector u(order);
  const auto& mu = rule.nodes();
  const auto& w = rule.weights();
  for (std::size_t i = 0; i < rule.size(); ++i) {
    double p = w[i] * f[i];
    for (std::size_t j = 0; j <= order; ++j) {
      u[j] += p;
      p *= mu[i];
    }
  }
  return u;
}

}  // namespace kershaw
