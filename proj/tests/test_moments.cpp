#include <doctest.h>

#include <cmath>
#include <random>

#include "kershaw/errors.hpp"
#include "kershaw/legendre.hpp"
#include "kershaw/moments.hpp"
#include "kershaw/quadrature.hpp"
#include "support.hpp"

using namespace kershaw;

TEST_CASE("normalize divides by the density") {
  const auto a = normalize({2.0, 1.0, 0.6});
  CHECK(a.order() == 2);
  CHECK(a[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(a[2] == doctest::Approx(0.3).epsilon(1e-15));

  const auto iso = normalize({1.0, 0.0, 1.0 / 3.0});
  CHECK(iso[1] == 0.0);
  CHECK(iso[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const auto tiny = normalize({1e-8, 0.0, 1e-8 / 3.0});
  CHECK(tiny[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("normalize rejects non-positive densities") {
  CHECK_THROWS_AS(normalize({0.0, 0.1}), NonPositiveDensity);
  CHECK_THROWS_AS(normalize({-1.0, 0.1}), NonPositiveDensity);
}

TEST_CASE("normalize is scale invariant") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> scale(1e-6, 1e6);
  for (int trial = 0; trial < 1000; ++trial) {
    const MomentVector u = testing::random_realizable(rng, 4);
    const double c = scale(rng);
    const auto a = normalize(u);
    const auto b = normalize(c * u);
    for (std::size_t j = 1; j <= 4; ++j) {
      CHECK(testing::rel_err(b[j], a[j], 1e-300) <= 1e-14);
    }
  }
}

TEST_CASE("normalized moments of atomic measures are bounded by one") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto phi = normalize(testing::random_realizable(rng, 6));
    for (std::size_t j = 1; j <= 6; ++j) CHECK(std::abs(phi[j]) <= 1.0 + 1e-15);
  }
}

TEST_CASE("isotropic moments") {
  CHECK(isotropic_moments(2, 1.0) == MomentVector{1.0, 0.0, 1.0 / 3.0});
  CHECK(isotropic_moments(3, 1.0) == MomentVector{1.0, 0.0, 1.0 / 3.0, 0.0});
  CHECK(isotropic_moments(1, 3.0) == MomentVector{3.0, 0.0});
  const auto u = isotropic_moments(6, 2.0);
  CHECK(u[4] == doctest::Approx(2.0 / 5.0));
  CHECK(u[6] == doctest::Approx(2.0 / 7.0));
}

TEST_CASE("MomentVector arithmetic and slicing") {
  MomentVector u{1.0, 2.0, 3.0};
  CHECK(u.order() == 2);
  CHECK(u.truncated(1) == MomentVector{1.0, 2.0});
  CHECK(u.extended(4.0) == MomentVector{1.0, 2.0, 3.0, 4.0});
  CHECK(2.0 * u == MomentVector{2.0, 4.0, 6.0});
  CHECK(u - u == MomentVector(2));
  CHECK_THROWS_AS(u += MomentVector{1.0}, Error);
}

TEST_CASE("Gauss-Legendre rules integrate monomials to their design degree") {
  for (std::size_t n : {1u, 2u, 5u, 30u, 64u, 210u}) {
    const QuadratureRule q = gauss_legendre(n);
    CHECK(q.size() == n);
    CHECK(q.degree() == 2 * n - 1);
    double wsum = 0.0;
    for (double w : q.weights()) {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-13));
    for (std::size_t i = 1; i < n; ++i) CHECK(q.nodes()[i] > q.nodes()[i - 1]);
    for (std::size_t j = 0; j <= q.degree(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += q.weights()[i] * std::pow(q.nodes()[i], double(j));
      const double exact = monomial_integral(j);
      CHECK(std::abs(s - exact) <= 1e-13 * std::max(1.0, std::abs(exact)) + 1e-15);
    }
  }
}

TEST_CASE("entropy quadrature size") {
  CHECK(entropy_quadrature_size(1) == 30);
  CHECK(entropy_quadrature_size(10) == 30);
  CHECK(entropy_quadrature_size(11) == 32);
  CHECK(entropy_quadrature_size(50) == 110);
}

TEST_CASE("moments_of_density") {
  const QuadratureRule q = gauss_legendre(20);
  std::vector<double> half(q.size(), 0.5), zero(q.size(), 0.0), ex(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) ex[i] = std::exp(q.nodes()[i]);

  const auto iso = moments_of_density(half, q, 2);
  CHECK(iso[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(iso[1]) < 1e-15);
  CHECK(iso[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  // Closed forms: int exp = e - 1/e, int mu exp = 2/e.
  const auto e = moments_of_density(ex, q, 1);
  CHECK(e[0] == doctest::Approx(std::exp(1.0) - std::exp(-1.0)).epsilon(1e-14));
  CHECK(e[1] == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
  const double oracle = testing::integrate([](double m) { return m * std::exp(m); }, -1.0, 1.0);
  CHECK(e[1] == doctest::Approx(oracle).epsilon(1e-14));

  CHECK(moments_of_density(zero, q, 3) == MomentVector(3));
  CHECK_THROWS_AS(moments_of_density(half, q, 40), Error);
  CHECK_THROWS_AS(moments_of_density(std::vector<double>(3, 1.0), q, 2), Error);
}

TEST_CASE("atomic moments by summation match AtomicMeasure::moments") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = testing::random_atomic(rng, 5);
    const auto a = m.moments(8);
    const auto b = testing::atomic_moments(m, 8);
    for (std::size_t j = 0; j <= 8; ++j) CHECK(std::abs(a[j] - b[j]) <= 1e-13 * b[0]);
  }
}

TEST_CASE("Legendre transform examples") {
  const auto l = monomial_to_legendre({1.0, 0.0, 1.0 / 3.0});
  CHECK(l[0] == doctest::Approx(1.0));
  CHECK(std::abs(l[1]) < 1e-16);
  CHECK(std::abs(l[2]) < 1e-15);

  const auto m = legendre_to_monomial({1.0, 0.0, 0.0});
  CHECK(m[0] == doctest::Approx(1.0));
  CHECK(std::abs(m[1]) < 1e-16);
  CHECK(m[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  CHECK(monomial_to_legendre(MomentVector{2.5}) == MomentVector{2.5});
  CHECK(legendre_to_monomial(MomentVector{2.5}) == MomentVector{2.5});
}

TEST_CASE("Legendre moments agree with direct quadrature of P_j") {
  // psi(mu) = exp(0.7 mu) (1 + mu^2 / 2)
  auto psi = [](double mu) { return std::exp(0.7 * mu) * (1.0 + 0.5 * mu * mu); };
  const std::size_t order = 12;
  MomentVector mono(order), leg(order);
  for (std::size_t j = 0; j <= order; ++j) {
    mono[j] = testing::integrate([&](double mu) { return std::pow(mu, double(j)) * psi(mu); }, -1, 1);
    leg[j] = testing::integrate([&](double mu) { return legendre_values(order, mu)[j] * psi(mu); }, -1, 1);
  }
  const auto to_leg = monomial_to_legendre(mono);
  const auto to_mono = legendre_to_monomial(leg);
  for (std::size_t j = 0; j <= order; ++j) {
    CHECK(std::abs(to_leg[j] - leg[j]) <= 1e-12);
    CHECK(std::abs(to_mono[j] - mono[j]) <= 1e-12);
  }
}

TEST_CASE("Legendre values follow the three-term recurrence") {
  const auto p = legendre_values(3, 0.5);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 0.5);
  CHECK(p[2] == doctest::Approx(-0.125));
  CHECK(p[3] == doctest::Approx(-0.4375));
  const auto one = legendre_values(50, 1.0);
  for (double v : one) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("monomial to Legendre round trip to order 100") {
  std::mt19937_64 rng(5);
  for (std::size_t order : {5u, 20u, 60u, 100u}) {
    const LegendreTransform t(order);
    for (int trial = 0; trial < 20; ++trial) {
      const MomentVector u = testing::random_realizable(rng, order);
      const MomentVector back = t.to_monomial(t.to_legendre(u));
      for (std::size_t j = 0; j <= order; ++j) CHECK(std::abs(back[j] - u[j]) <= 1e-12 * u[0]);
    }
  }
}

TEST_CASE("Legendre to monomial round trip at low order") {
  std::mt19937_64 rng(9);
  const LegendreTransform t(10);
  for (int trial = 0; trial < 50; ++trial) {
    const MomentVector leg = t.to_legendre(testing::random_realizable(rng, 10));
    const MomentVector back = t.to_legendre(t.to_monomial(leg));
    for (std::size_t j = 0; j <= 10; ++j) CHECK(std::abs(back[j] - leg[j]) <= 1e-12);
  }
}
