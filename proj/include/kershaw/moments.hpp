#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace kershaw {

class QuadratureRule;

/// Moments u_0..u_N of an angular density against the monomial basis
/// (or, for P_N runs, the Legendre basis).
class MomentVector {
 public:
  MomentVector() : values_(1, 0.0) {}
  explicit MomentVector(std::size_t order) : values_(order + 1, 0.0) {}
  MomentVector(std::initializer_list<double> values);
  explicit MomentVector(std::vector<double> values);
  explicit MomentVector(std::span<const double> values);

  std::size_t order() const noexcept { return values_.size() - 1; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator[](std::size_t j) const { return values_[j]; }
  double& operator[](std::size_t j) { return values_[j]; }

  double density() const noexcept { return values_.front(); }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  /// Moments u_0..u_order; order must not exceed this vector's order.
  MomentVector truncated(std::size_t order) const;
  /// Appends u_{N+1}.
  MomentVector extended(double next) const;

  MomentVector& operator+=(const MomentVector& other);
  MomentVector& operator-=(const MomentVector& other);
  MomentVector& operator*=(double c);

  friend MomentVector operator+(MomentVector a, const MomentVector& b) { return a += b; }
  friend MomentVector operator-(MomentVector a, const MomentVector& b) { return a -= b; }
  friend MomentVector operator*(double c, MomentVector a) { return a *= c; }
  friend MomentVector operator*(MomentVector a, double c) { return a *= c; }

  friend bool operator==(const MomentVector&, const MomentVector&) = default;

 private:
  std::vector<double> values_;
};

/// phi_j = u_j / u_0 for j = 1..N.
class NormalizedMoments {
 public:
  explicit NormalizedMoments(std::vector<double> values);
  NormalizedMoments(std::initializer_list<double> values);

  std::size_t order() const noexcept { return values_.size(); }
  /// 1-based to match the moment index it normalizes.
  double operator[](std::size_t j) const { return values_[j - 1]; }
  std::span<const double> values() const noexcept { return values_; }

  /// The moment vector (1, phi_1, ..., phi_N).
  MomentVector with_unit_density() const;

 private:
  std::vector<double> values_;
};

/// Throws NonPositiveDensity if u_0 <= 0 or u has order 0.
NormalizedMoments normalize(const MomentVector& u);

/// Moments of the angle-independent density density/2.
MomentVector isotropic_moments(std::size_t order, double density);

/// <mu^j> over [-1, 1]: 2/(j+1) for even j, 0 for odd j.
double monomial_integral(std::size_t j);

/// u_j = sum_i w_i mu_i^j f_i with f sampled at the rule's nodes.
MomentVector moments_of_density(std::span<const double> f, const QuadratureRule& rule,
                                std::size_t order);

}  // namespace kershaw
