#pragma once

// Test-only oracles, deliberately independent of the library's numerics:
// adaptive Simpson instead of Gauss-Kronrod, plain bisection, brute-force
// sampling. Expected values asserted in the suites are produced here.

#include <cmath>
#include <functional>
#include <random>

namespace oracles {

inline double simpson(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double whole, double tol, int depth) {
  const double c = 0.5 * (a + b);
  const double left = simpson(f, a, c), right = simpson(f, c, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, c, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, c, b, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson on [a,b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  return adaptive_simpson_rec(f, a, b, simpson(f, a, b), tol, 60);
}

/// int_0^inf t^k/(1+t^m) dt by splitting at 1 and substituting t -> 1/s on the
/// tail (s^{m-k-2} factor handled by a further power substitution when the
/// exponent is negative).
inline double radial_power(double k, double m, double tol = 1e-12) {
  const double head =
      integrate([k, m](double t) { return std::pow(t, k) / (1.0 + std::pow(t, m)); },
                0.0, 1.0, tol);
  const double e = m - k - 2.0;
  double tail;
  if (e >= 0.0) {
    tail = integrate(
        [e, m](double s) { return std::pow(s, e) / (1.0 + std::pow(s, m)); }, 0.0,
        1.0, tol);
  } else {
    const double p = 1.0 / (1.0 + e);
    tail = integrate(
        [p, m](double v) { return p / (1.0 + std::pow(std::pow(v, p), m)); }, 0.0,
        1.0, tol);
  }
  return head + tail;
}

/// Root of f on [lo,hi] (f increasing) by bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double target, int iters = 200) {
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline std::mt19937_64 rng(unsigned seed) { return std::mt19937_64{seed}; }

}  // namespace oracles
