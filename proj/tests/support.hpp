#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "kershaw/moments.hpp"
#include "kershaw/realizability.hpp"

namespace testing {

using kershaw::AtomicMeasure;
using kershaw::MomentVector;

/// r atoms uniform in [-1, 1], densities uniform in (0, 1].
inline AtomicMeasure random_atomic(std::mt19937_64& rng, std::size_t max_atoms) {
  std::uniform_int_distribution<std::size_t> count(1, max_atoms);
  std::uniform_real_distribution<double> atom(-1.0, 1.0);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  AtomicMeasure m;
  const std::size_t r = count(rng);
  for (std::size_t i = 0; i < r; ++i) {
    m.atoms.push_back(atom(rng));
    double w = weight(rng);
    while (w == 0.0) w = weight(rng);
    m.densities.push_back(w);
  }
  return m;
}

/// Moments by direct summation over atoms (no quadrature).
inline MomentVector atomic_moments(const AtomicMeasure& m, std::size_t order) {
  MomentVector u(order);
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    double p = m.densities[i];
    for (std::size_t j = 0; j <= order; ++j) {
      u[j] += p;
      p *= m.atoms[i];
    }
  }
  return u;
}

/// Unit-density state strictly inside the realizable set: a random atomic
/// measure blended with the isotropic density at weight >= min_iso.
inline MomentVector random_interior(std::mt19937_64& rng, std::size_t order, double min_iso = 0.02) {
  MomentVector a = atomic_moments(random_atomic(rng, 5), order);
  a *= 1.0 / a[0];
  std::uniform_real_distribution<double> theta(min_iso, 1.0);
  const double t = theta(rng);
  return (1.0 - t) * a + t * kershaw::isotropic_moments(order, 1.0);
}

/// Unit-density realizable state, possibly on the boundary.
inline MomentVector random_realizable(std::mt19937_64& rng, std::size_t order) {
  MomentVector a = atomic_moments(random_atomic(rng, 5), order);
  return (1.0 / a[0]) * a;
}

inline double rel_err(double a, double b, double floor = 1.0) {
  return std::abs(a - b) / std::max(floor, std::abs(b));
}

/// phi_1 of exp(a mu) normalized: the Langevin function coth(a) - 1/a.
inline double langevin(double a) {
  if (std::abs(a) < 1e-4) return a / 3.0 - a * a * a / 45.0;
  return 1.0 / std::tanh(a) - 1.0 / a;
}

/// Inverse Langevin function by bisection.
inline double inverse_langevin(double phi1) {
  double lo = -1e3, hi = 1e3;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (langevin(mid) < phi1 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Composite Gauss-Legendre oracle: integrates f over [a, b] with `panels`
/// panels of 20-point rules, independent of the library's quadrature.
template <class F>
double integrate(F&& f, double a, double b, int panels = 200) {
  static const double x[10] = {0.0765265211334973, 0.2277858511416451, 0.3737060887154196,
                               0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
                               0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
                               0.9931285991850949};
  static const double w[10] = {0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
                               0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
                               0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
                               0.0176140071391521};
  const double h = (b - a) / panels;
  double s = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    for (int i = 0; i < 10; ++i) {
      s += w[i] * (f(c - 0.5 * h * x[i]) + f(c + 0.5 * h * x[i]));
    }
  }
  return 0.5 * h * s;
}

}  // namespace testing
