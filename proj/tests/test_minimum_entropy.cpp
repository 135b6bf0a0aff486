#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "kershaw/closures.hpp"
#include "kershaw/errors.hpp"
#include "kershaw/minimum_entropy.hpp"
#include "kershaw/realizability.hpp"
#include "support.hpp"

using namespace kershaw;

TEST_CASE("isotropic moments give the constant ansatz") {
  const auto m = mn_solve_dual({1.0, 0.0, 1.0 / 3.0}, 1e-12, 50);
  CHECK(m.alpha[0] == doctest::Approx(std::log(0.5)).epsilon(1e-12));
  CHECK(std::abs(m.alpha[1]) <= 1e-12);
  CHECK(std::abs(m.alpha[2]) <= 1e-12);
  CHECK(std::abs(mn_close({1.0, 0.0, 1.0 / 3.0}, m)) <= 1e-14);
}

TEST_CASE("M1 multipliers satisfy the Langevin identity") {
  const auto m = mn_solve_dual({1.0, 0.3}, 1e-12, 50);
  CHECK(testing::langevin(m.alpha[1]) == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(m.alpha[1] == doctest::Approx(testing::inverse_langevin(0.3)).epsilon(1e-9));
  // Integration by parts: u_2 = 1 - 2 phi_1 / alpha_1.
  const double u2 = mn_close({1.0, 0.3}, m);
  CHECK(u2 == doctest::Approx(1.0 - 2.0 * 0.3 / m.alpha[1]).epsilon(1e-12));
  const double oracle = testing::integrate(
      [&](double mu) { return mu * mu * std::exp(m.alpha[0] + m.alpha[1] * mu); }, -1.0, 1.0);
  CHECK(u2 == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("symmetric data give even multipliers") {
  for (std::size_t n = 1; n <= 5; ++n) {
    MomentVector u = isotropic_moments(n, 1.0);
    if (n >= 2) u[2] = 0.5;
    if (n >= 4) u[4] = 0.35;
    const auto m = mn_solve_dual(u, 1e-12, 50);
    for (std::size_t j = 1; j <= n; j += 2) CHECK(std::abs(m.alpha[j]) <= 1e-10);
  }
}

TEST_CASE("closure approaching the boundary stays inside the bounds") {
  const MomentVector u{1.0, 0.99};
  const auto m = mn_solve_dual(u, 1e-10, 50);
  const double u2 = mn_close(u, m);
  const auto b = moment_bounds(u);
  CHECK(u2 > b.lower);
  CHECK(u2 < b.upper);
  CHECK(u2 > 0.98);
  const double a = testing::inverse_langevin(0.99);
  CHECK(u2 == doctest::Approx(1.0 - 2.0 * 0.99 / a).epsilon(1e-8));
}

TEST_CASE("M1 closure matches the Langevin oracle") {
  for (int i = 0; i <= 190; ++i) {
    const double p = -0.95 + 0.01 * i;
    const MomentVector u{1.0, p};
    const double u2 = mn_close(u, mn_solve_dual(u, 1e-10, 50));
    const double a = testing::inverse_langevin(p);
    const double oracle = std::abs(a) < 1e-6 ? 1.0 / 3.0 : 1.0 - 2.0 * p / a;
    CHECK(std::abs(u2 - oracle) <= 1e-8);
  }
}

TEST_CASE("dual solution is consistent") {
  std::mt19937_64 rng(91);
  for (std::size_t n = 1; n <= 4; ++n) {
    const MinimumEntropyClosure closure(n);
    for (int trial = 0; trial < 200; ++trial) {
      MomentVector u = testing::random_interior(rng, n, 0.05);
      u *= 0.1 + 3.0 * (trial % 7);
      DualSolveOptions opts;
      opts.tol = 1e-10;
      const auto r = closure.solve(u, opts);
      CHECK(r.iterations <= 50);
      CHECK(r.gradient_norm <= 1e-10 * u[0]);
      CHECK(closure.gradient(u, r.multipliers).norm() <= 1e-10 * u[0]);
      const auto a = closure.ansatz_moments(r.multipliers, n);
      for (std::size_t j = 0; j <= n; ++j) CHECK(std::abs(a[j] - u[j]) <= 1e-8 * u[0]);
      const Eigen::MatrixXd h = closure.hessian(r.multipliers);
      CHECK((h - h.transpose()).norm() == 0.0);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
      CHECK(es.eigenvalues().minCoeff() > 0.0);
    }
  }
}

TEST_CASE("warm starts converge faster than the isotropic start") {
  const MinimumEntropyClosure closure(2);
  const MomentVector u{1.0, 0.6, 0.5};
  const auto cold = closure.solve(u);
  const MomentVector nearby{1.0, 0.601, 0.5005};
  const auto warm = closure.solve(nearby, {}, &cold.multipliers);
  const auto fresh = closure.solve(nearby);
  CHECK(warm.iterations < fresh.iterations);
}

TEST_CASE("implicit M_N gradient matches finite differences") {
  std::mt19937_64 rng(97);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      const MomentVector u = testing::random_interior(rng, n, 0.1);
      const auto g = closing_gradient(ClosureKind::mn(n), u);
      const double h = 1e-6;
      for (std::size_t j = 0; j <= n; ++j) {
        MomentVector p = u, m = u;
        p[j] += h;
        m[j] -= h;
        const double fd = (flux(ClosureKind::mn(n), p)[n] - flux(ClosureKind::mn(n), m)[n]) / (2 * h);
        CHECK(testing::rel_err(g(static_cast<Eigen::Index>(j)), fd) <= 1e-5);
      }
    }
  }
}

TEST_CASE("dual errors") {
  CHECK_THROWS_AS(mn_solve_dual({0.0, 0.0}, 1e-10, 50), NonPositiveDensity);
  CHECK_THROWS_AS(mn_solve_dual({1.0, 0.5, 0.2}, 1e-10, 50), NotRealizable);
  CHECK_THROWS_AS(mn_solve_dual({1.0, 0.6, 0.5}, 1e-14, 1), NoConvergence);
  try {
    mn_solve_dual({1.0, 0.6, 0.5}, 1e-14, 2);
    FAIL("expected NoConvergence");
  } catch (const NoConvergence& e) {
    CHECK(std::string(e.what()).find("gradient norms") != std::string::npos);
  }
}

TEST_CASE("near-boundary states are regularized") {
  CHECK_FALSE(MinimumEntropyClosure(1).solve({1.0, 0.6}).regularized);
  // A near-Dirac state cannot be represented on the quadrature even after blending.
  CHECK_THROWS_AS(MinimumEntropyClosure(2).solve({1.0, 0.5, 0.25 + 1e-10}), BoundaryMoment);
}
