#pragma once

/// 1-D adaptive quadrature (Gauss-Kronrod 7/15) and the power-law radial
/// integrals that every limit-object computation reduces to.

#include <cmath>
#include <functional>

#include "frontflow/common.hpp"

namespace frontflow {
namespace quad {

namespace detail {

// Kronrod-15 nodes/weights on [-1,1]; the embedded Gauss-7 rule uses the odd
// indices. Abscissae are symmetric; only nonnegative ones listed.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Estimate {
  double value;
  double error;
};

template <class F>
Estimate gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double gauss = fc * kWg[3];
  double kron = fc * kWgk[7];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double fs = f(c - dx) + f(c + dx);
    kron += fs * kWgk[i];
    if (i % 2 == 1) gauss += fs * kWg[i / 2];
  }
  kron *= h;
  gauss *= h;
  // conservative error estimate: |K15 - G7| without the usual sharpening
  return {kron, std::abs(kron - gauss)};
}

template <class F>
double adaptive(const F& f, double a, double b, double budget, int depth) {
  const auto est = gk15(f, a, b);
  if (est.error <= budget || depth <= 0) return est.value;
  const double c = 0.5 * (a + b);
  return adaptive(f, a, c, 0.5 * budget, depth - 1) +
         adaptive(f, c, b, 0.5 * budget, depth - 1);
}

}  // namespace detail

/// Adaptive integral of f over [a,b]. The error budget halves on every
/// bisection, so the leaf-interval error estimates sum to at most the
/// requested tolerance.
template <class F>
double integrate(const F& f, double a, double b, double rel_tol = 1e-10,
                 double abs_tol = 1e-14, int max_depth = 48) {
  const auto first = detail::gk15(f, a, b);
  const double budget = std::max(abs_tol, rel_tol * std::abs(first.value));
  if (first.error <= budget) return first.value;
  return detail::adaptive(f, a, b, budget, max_depth);
}

/// Closed Beta-function form of int_0^inf t^{s-1}/(1+t^m) dt, valid 0 < s < m.
inline double power_integral(double s, double m) {
  require(s > 0.0 && s < m, "power integral requires 0 < s < m");
  return (kPi / m) / std::sin(kPi * s / m);
}

/// Quadrature route for int_0^inf t^k/(1+t^m) dt with k >= 0, m > k+1.
/// Split at t=1; the tail maps to int_0^1 s^{m-k-2}/(1+s^m) ds, whose endpoint
/// singularity (when m-k-2 < 0) is removed by the power substitution
/// s = v^{1/(1+e)} with e = m-k-2. Used as an independent check of
/// power_integral(k+1, m); the discretization-free acceptance identities run
/// through this path.
inline double power_integral_quadrature(double k, double m, double rel_tol = 1e-12) {
  require(k >= 0.0 && m > k + 1.0, "tail integral requires m > k+1");
  const double head =
      integrate([k, m](double t) { return std::pow(t, k) / (1.0 + std::pow(t, m)); },
                0.0, 1.0, rel_tol);
  const double e = m - k - 2.0;  // tail integrand exponent: s^e / (1+s^m)
  double tail;
  if (e >= 0.0) {
    tail = integrate([e, m](double s) { return std::pow(s, e) / (1.0 + std::pow(s, m)); },
                     0.0, 1.0, rel_tol);
  } else {
    // s = v^p with p = 1/(1+e) turns s^e ds into p dv exactly.
    const double p = 1.0 / (1.0 + e);
    tail = integrate(
        [p, m](double v) {
          const double s = std::pow(v, p);
          return p / (1.0 + std::pow(s, m));
        },
        0.0, 1.0, rel_tol);
  }
  return head + tail;
}

}  // namespace quad
}  // namespace frontflow
