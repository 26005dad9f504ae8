#pragma once

/// Threshold kernel machinery: the time-step scalings sigma_alpha(h) and
/// beta(alpha,h), pointwise kernel evaluation, the h-independent total kernel
/// mass, and midpoint-sampled kernel patches with analytic tail accounting.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "frontflow/common.hpp"
#include "frontflow/norms.hpp"
#include "frontflow/quadrature.hpp"

namespace frontflow {

/// Time-step scalings of the thresholding scheme. alpha in [1,2).
/// For alpha in (1,2): sigma = h^{alpha/2}, beta = h^{1/2}.
/// For alpha = 1: sigma solves h = sigma^2 |ln sigma| on the monotone branch
/// sigma in (0, e^{-1/2}), and beta = sigma |ln sigma|.
struct SchemeParams {
  double alpha = 1.5;
  double h = 0.0;
  double sigma = 0.0;
  double beta = 0.0;
};

inline double sigma_of_h(double alpha, double h) {
  check_alpha(alpha);
  require(h > 0.0, "time step h must be positive");
  if (alpha > 1.0) return std::pow(h, 0.5 * alpha);
  // alpha = 1: invert sigma^2 |ln sigma| on (0, e^{-1/2}); the map is strictly
  // increasing there with supremum 1/(2e) at sigma = e^{-1/2}.
  const double h_max = 1.0 / (2.0 * std::exp(1.0));
  require(h < h_max, "alpha=1 requires h < 1/(2e) ~= " + std::to_string(h_max) +
                         " (monotone branch of sigma^2|ln sigma|), got h = " +
                         std::to_string(h));
  double lo = 0.0, hi = std::exp(-0.5);
  auto f = [](double s) { return s * s * std::abs(std::log(s)); };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < h)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-16 * hi) break;
  }
  return 0.5 * (lo + hi);
}

inline double beta_of_h(double alpha, double h) {
  if (alpha > 1.0) {
    check_alpha(alpha);
    require(h > 0.0, "time step h must be positive");
    return std::sqrt(h);
  }
  const double s = sigma_of_h(alpha, h);
  return s * std::abs(std::log(s));
}

inline SchemeParams make_scheme_params(double alpha, double h) {
  SchemeParams p;
  p.alpha = alpha;
  p.h = h;
  p.sigma = sigma_of_h(alpha, h);
  p.beta = beta_of_h(alpha, h);
  return p;
}

/// J_h(y) = sigma / (sigma^{(N+alpha)/alpha} + N(y)^{N+alpha}).
/// At y = 0 this equals sigma^{-N/alpha}.
inline double kernel_value(const Norm& desc, const SchemeParams& p,
                           std::span<const double> y) {
  const double n_plus_a = desc.dim() + p.alpha;
  const double ny = desc.eval(y);
  return p.sigma / (std::pow(p.sigma, n_plus_a / p.alpha) + std::pow(ny, n_plus_a));
}

/// Total mass ||J_h||_{L^1(R^N)} = ||P_alpha||_{L^1}; independent of h.
/// Radial factor in closed Beta form, angular factor int_{S^{N-1}} N(t)^{-N}
/// by adaptive quadrature (relative tolerance 1e-10). N=2 or 3.
inline double kernel_mass(const Norm& desc, int n, double alpha) {
  check_alpha(alpha);
  require(n == desc.dim(), "kernel_mass dimension mismatch");
  const double radial = quad::power_integral(n, n + alpha);
  double angular = 0.0;
  if (n == 2) {
    angular = quad::integrate(
        [&desc](double a) {
          return std::pow(desc(Vec2{std::cos(a), std::sin(a)}), -2.0);
        },
        0.0, 2.0 * kPi, 1e-10);
  } else if (n == 3) {
    angular = quad::integrate(
        [&desc](double phi) {
          return quad::integrate(
              [&desc, phi](double mu) {
                const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
                const double x[3] = {s * std::cos(phi), s * std::sin(phi), mu};
                return std::pow(desc.eval(std::span<const double>(x, 3)), -3.0);
              },
              -1.0, 1.0, 1e-12);
        },
        0.0, 2.0 * kPi, 1e-10);
  } else {
    fail("kernel_mass supports N=2 and N=3 only");
  }
  return radial * angular;
}

/// Midpoint-sampled kernel on an odd centered patch. Entry (i1,..,iN) holds
/// J_h(i * dx) * dx^N; entries are exactly even-symmetric by construction.
struct KernelTable {
  SchemeParams params;
  int dim = 2;
  int half = 0;     ///< patch covers indices [-half, half] per axis
  double dx = 0.0;  ///< grid spacing; patch_radius = half * dx
  std::vector<double> values;  ///< side = 2*half+1 per axis, row-major
  double total_mass = 0.0;     ///< analytic ||J_h||_{L^1}
  double tail_mass = 0.0;      ///< total_mass - sum(values), clipped at 0

  int side() const { return 2 * half + 1; }
  double patch_radius() const { return half * dx; }
  std::int64_t cell_count() const {
    std::int64_t c = 1;
    for (int d = 0; d < dim; ++d) c *= side();
    return c;
  }
  double sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
};

/// Smallest patch radius whose analytic Euclidean-equivalence tail bound
/// int_{|y|>R} J_h <= sigma C^{N+alpha} omega_{N-1} R^{-alpha}/alpha
/// falls below eps_tail * total_mass.
inline double kernel_patch_radius(const Norm& desc, const SchemeParams& p,
                                  double eps_tail, double total_mass) {
  const int n = desc.dim();
  const double c_eq = desc.equivalence_constant();
  const double coeff =
      p.sigma * std::pow(c_eq, n + p.alpha) * sphere_measure(n) / p.alpha;
  return std::pow(coeff / (eps_tail * total_mass), 1.0 / p.alpha);
}

inline KernelTable sample_kernel_grid(const Norm& desc, const SchemeParams& p,
                                      double dx, double eps_tail = 1e-3,
                                      std::int64_t max_cells = (std::int64_t{1} << 31)) {
  const int n = desc.dim();
  require(n == 2 || n == 3, "kernel sampling supports N=2 and N=3 only");
  require(dx > 0.0, "kernel sampling requires dx > 0");
  require(eps_tail > 0.0 && eps_tail < 1.0, "eps_tail must be in (0,1)");
  const double core = std::pow(p.sigma, 1.0 / p.alpha);
  require(dx <= core / 4.0 * (1.0 + 1e-12),
          "dx too coarse:  dx = " + std::to_string(dx) +
              " must be <= sigma^(1/alpha)/4 = " + std::to_string(core / 4.0));

  KernelTable table;
  table.params = p;
  table.dim = n;
  table.dx = dx;
  table.total_mass = kernel_mass(desc, n, p.alpha);

  const double radius = kernel_patch_radius(desc, p, eps_tail, table.total_mass);
  table.half = std::max(1, static_cast<int>(std::ceil(radius / dx)));

  const std::int64_t side = 2 * static_cast<std::int64_t>(table.half) + 1;
  std::int64_t cells = 1;
  for (int d = 0; d < n; ++d) {
    cells *= side;
    require(cells <= max_cells,
            "kernel patch of side " + std::to_string(side) +
                " exceeds the configured memory budget");
  }
  table.values.assign(static_cast<size_t>(cells), 0.0);

  const double cell_vol = std::pow(dx, n);
  const int half = table.half;
  const int s = static_cast<int>(side);
  if (n == 2) {
    // Fill the lexicographically nonnegative half and mirror, so that entries
    // at +/- index are bit-equal.
    parallel_for(0, side, [&](std::int64_t row) {
      const int i = static_cast<int>(row) - half;
      if (i < 0) return;
      for (int j = (i == 0 ? 0 : -half); j <= half; ++j) {
        const double y[2] = {i * dx, j * dx};
        const double v = kernel_value(desc, p, std::span<const double>(y, 2)) * cell_vol;
        table.values[static_cast<size_t>((i + half) * s + (j + half))] = v;
        table.values[static_cast<size_t>((-i + half) * s + (-j + half))] = v;
      }
    });
  } else {
    parallel_for(0, side, [&](std::int64_t plane) {
      const int i = static_cast<int>(plane) - half;
      if (i < 0) return;
      for (int j = -half; j <= half; ++j) {
        if (i == 0 && j < 0) continue;
        for (int k = (i == 0 && j == 0 ? 0 : -half); k <= half; ++k) {
          const double y[3] = {i * dx, j * dx, k * dx};
          const double v =
              kernel_value(desc, p, std::span<const double>(y, 3)) * cell_vol;
          const auto at = [&](int a, int b, int c) {
            return static_cast<size_t>((static_cast<std::int64_t>(a + half) * s +
                                        (b + half)) *
                                           s +
                                       (c + half));
          };
          table.values[at(i, j, k)] = v;
          table.values[at(-i, -j, -k)] = v;
        }
      }
    });
  }

  table.tail_mass = std::max(0.0, table.total_mass - table.sum());
  return table;
}

}  // namespace frontflow
