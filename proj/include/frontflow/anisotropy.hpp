#pragma once

/// Limit-flow quantities of the thresholding scheme: the constant C_{N,alpha},
/// the mobility mu_alpha, the anisotropy matrix A(p), the curvature operator
/// F_alpha(M,p) = tr(M A), the mobility norm Phi_alpha = mu_alpha(p)|p| with
/// its dual, and Wulff shapes. Hyperplane/sphere integrals split into a closed
/// Beta-form radial factor times an angular quadrature; in 2-D the angular
/// part is a two-point counting sum and everything is exact.

#include <array>
#include <cmath>
#include <vector>

#include "frontflow/common.hpp"
#include "frontflow/norms.hpp"
#include "frontflow/polyline.hpp"
#include "frontflow/quadrature.hpp"

namespace frontflow {

/// Symmetric N x N matrix, N = 2 or 3, row-major in a fixed 3x3 buffer.
struct SymMat {
  int n = 2;
  std::array<double, 9> a{};  // row-major

  static SymMat zero(int n) {
    SymMat m;
    m.n = n;
    return m;
  }
  static SymMat diag(std::initializer_list<double> d) {
    SymMat m;
    m.n = static_cast<int>(d.size());
    int i = 0;
    for (double v : d) {
      m.at(i, i) = v;
      ++i;
    }
    return m;
  }
  static SymMat from2(const Mat2& m2) {
    SymMat m;
    m.n = 2;
    m.at(0, 0) = m2.a11;
    m.at(0, 1) = m2.a12;
    m.at(1, 0) = m2.a12;
    m.at(1, 1) = m2.a22;
    return m;
  }

  double& at(int i, int j) { return a[static_cast<size_t>(i * 3 + j)]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i * 3 + j)]; }

  SymMat operator+(const SymMat& o) const {
    SymMat r = *this;
    for (int i = 0; i < 9; ++i) r.a[static_cast<size_t>(i)] += o.a[static_cast<size_t>(i)];
    return r;
  }
  SymMat operator*(double s) const {
    SymMat r = *this;
    for (double& v : r.a) v *= s;
    return r;
  }
};

inline double trace_product(const SymMat& m, const SymMat& a) {
  require(m.n == a.n, "matrix dimension mismatch");
  double t = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) t += m.at(i, j) * a.at(j, i);
  return t;
}

namespace detail {

inline std::array<double, 3> cross3(const std::array<double, 3>& a,
                                    const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

inline double norm3(const std::array<double, 3>& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

/// Orthonormal basis (u,v) of the plane orthogonal to p (3-D).
inline void plane_basis(std::span<const double> p, std::array<double, 3>& u,
                        std::array<double, 3>& v) {
  require(p.size() == 3, "plane basis requires a 3-vector");
  std::array<double, 3> ph{};
  for (size_t i = 0; i < 3; ++i) ph[i] = p[i];
  const double pn = norm3(ph);
  for (double& c : ph) c /= pn;
  std::array<double, 3> seed = {1.0, 0.0, 0.0};
  if (std::abs(ph[0]) > 0.9) seed = {0.0, 1.0, 0.0};
  u = cross3(ph, seed);
  const double un = norm3(u);
  for (double& c : u) c /= un;
  v = cross3(ph, u);
}

}  // namespace detail

/// C_{N,alpha} = int_0^inf t^N (1+t^{N+alpha})^{-1} dt for alpha in (1,2);
/// 1 at alpha = 1 (the integral diverges there and the log-corrected time
/// scale absorbs it).
inline double c_const(int n, double alpha) {
  check_alpha(alpha);
  if (alpha == 1.0) return 1.0;
  return quad::power_integral(n + 1, n + alpha);
}

/// Quadrature route for c_const; cross-checks the Beta identity.
inline double c_const_quadrature(int n, double alpha, double rel_tol = 1e-12) {
  check_alpha(alpha);
  if (alpha == 1.0) return 1.0;
  return quad::power_integral_quadrature(n, n + alpha, rel_tol);
}

/// lambda_{alpha,N} = [int_0^inf t^{N-2}/(1+t^{N+alpha}) dt]^{-1}.
inline double lambda_const(int n, double alpha) {
  require(n >= 2, "lambda_const requires N >= 2");
  return 1.0 / quad::power_integral(n - 1, n + alpha);
}

inline double lambda_const_quadrature(int n, double alpha, double rel_tol = 1e-12) {
  return 1.0 / quad::power_integral_quadrature(n - 2, n + alpha, rel_tol);
}

/// Angular factor int_{S^{N-1} cap p^perp} N(theta)^{-k} dH^{N-2}.
/// N=2: counting measure over the two unit vectors +/- perp(p).
/// N=3: adaptive quadrature over the great circle.
inline double hyperplane_angular(const Norm& desc, std::span<const double> p,
                                 double k) {
  const int n = desc.dim();
  if (n == 2) {
    Vec2 t = perp(Vec2{p[0], p[1]});
    const double tn = norm2(t);
    require(tn > 0.0, "direction p must be nonzero");
    t = t * (1.0 / tn);
    return 2.0 * std::pow(desc(t), -k);
  }
  if (n == 3) {
    std::array<double, 3> u{}, v{};
    detail::plane_basis(p, u, v);
    return quad::integrate(
        [&](double t) {
          const double c = std::cos(t), s = std::sin(t);
          const double th[3] = {c * u[0] + s * v[0], c * u[1] + s * v[1],
                                c * u[2] + s * v[2]};
          return std::pow(desc.eval(std::span<const double>(th, 3)), -k);
        },
        0.0, 2.0 * kPi, 1e-11);
  }
  fail("hyperplane integrals support N=2 and N=3 only");
}

/// Mobility mu_alpha(p/|p|) = [2 int_{p^perp} P_alpha dH^{N-1}]^{-1}.
inline double mobility_mu(const Norm& desc, double alpha, std::span<const double> p) {
  check_alpha(alpha);
  const int n = desc.dim();
  double pn = 0.0;
  for (double c : p) pn += c * c;
  require(pn > 0.0, "mobility is undefined at p = 0");
  const double radial = quad::power_integral(n - 1, n + alpha);
  const double angular = hyperplane_angular(desc, p, n - 1);
  return 1.0 / (2.0 * radial * angular);
}

inline double mobility_mu(const Norm& desc, double alpha, Vec2 p) {
  const double xy[2] = {p.x, p.y};
  return mobility_mu(desc, alpha, std::span<const double>(xy, 2));
}

/// A(p/|p|) = C_{N,alpha} int_{S^{N-1} cap p^perp} theta (x) theta
///            N(theta)^{-(N+1)} dH^{N-2}(theta).
/// Satisfies A(p) p = 0 and A symmetric positive semidefinite.
inline SymMat anisotropy_matrix(const Norm& desc, double alpha,
                                std::span<const double> p) {
  check_alpha(alpha);
  const int n = desc.dim();
  const double c = c_const(n, alpha);
  SymMat m = SymMat::zero(n);
  if (n == 2) {
    Vec2 t = perp(Vec2{p[0], p[1]});
    const double tn = norm2(t);
    require(tn > 0.0, "anisotropy matrix is undefined at p = 0");
    t = t * (1.0 / tn);
    const double w = 2.0 * c * std::pow(desc(t), -3.0);
    m.at(0, 0) = w * t.x * t.x;
    m.at(0, 1) = m.at(1, 0) = w * t.x * t.y;
    m.at(1, 1) = w * t.y * t.y;
    return m;
  }
  if (n == 3) {
    std::array<double, 3> u{}, v{};
    detail::plane_basis(p, u, v);
    auto theta = [&](double t, int i) {
      return std::cos(t) * u[static_cast<size_t>(i)] +
             std::sin(t) * v[static_cast<size_t>(i)];
    };
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        const double e = quad::integrate(
            [&](double t) {
              const double th[3] = {theta(t, 0), theta(t, 1), theta(t, 2)};
              return th[i] * th[j] *
                     std::pow(desc.eval(std::span<const double>(th, 3)), -4.0);
            },
            0.0, 2.0 * kPi, 1e-11);
        m.at(i, j) = m.at(j, i) = c * e;
      }
    return m;
  }
  fail("anisotropy matrix supports N=2 and N=3 only");
}

/// F_alpha(M, p) = tr(M A(p/|p|)). Linear and degenerate elliptic in M.
inline double curvature_operator(const Norm& desc, double alpha, const SymMat& m,
                                 std::span<const double> p) {
  return trace_product(m, anisotropy_matrix(desc, alpha, p));
}

/// Phi_alpha(p) = mu_alpha(p) |p|; 1-homogeneous, even, convex (a norm).
/// Returns 0 at p = 0 by homogeneity.
inline double mobility_norm_phi(const Norm& desc, double alpha,
                                std::span<const double> p) {
  double pn = 0.0;
  for (double c : p) pn += c * c;
  if (pn == 0.0) return 0.0;
  return mobility_mu(desc, alpha, p) * std::sqrt(pn);
}

inline double mobility_norm_phi(const Norm& desc, double alpha, Vec2 p) {
  const double xy[2] = {p.x, p.y};
  return mobility_norm_phi(desc, alpha, std::span<const double>(xy, 2));
}

// ---------------------------------------------------------------------------
// Direction-indexed table (2-D). The reference solver and the morphology code
// interpolate mu, A and Phi linearly in angle; the Wulff boundary is the
// intersection of the sampled support half-planes.

struct AnisotropyTable {
  double alpha = 1.5;
  int n_dirs = 0;
  std::vector<double> mu;    ///< mu(theta_k), theta_k = 2 pi k / n_dirs
  std::vector<Mat2> amat;    ///< A(theta_k)
  std::vector<double> phi;   ///< Phi(theta_k)
  std::vector<Vec2> wulff_vertices;  ///< boundary of {Phi_dual <= 1}
  double c_n_alpha = 0.0;
  double lambda = 0.0;
  /// Measured direction-independent ratio Phi(p1,p2) / N(-p2,p1); recorded
  /// next to lambda because the two differ by the two-point counting factor.
  double phi_ratio_2d = 0.0;

  double angle(int k) const { return 2.0 * kPi * k / n_dirs; }

  /// Linear interpolation in angle, periodic.
  template <class T>
  T interp(const std::vector<T>& v, double theta) const {
    const double w = theta / (2.0 * kPi) * n_dirs;
    double f = w - std::floor(w);
    int k = static_cast<int>(std::floor(w)) % n_dirs;
    if (k < 0) k += n_dirs;
    const int k1 = (k + 1) % n_dirs;
    return v[static_cast<size_t>(k)] * (1.0 - f) + v[static_cast<size_t>(k1)] * f;
  }

  double mu_at(double theta) const { return interp(mu, theta); }
  double phi_at(double theta) const { return interp(phi, theta); }
  Mat2 amat_at(double theta) const { return interp(amat, theta); }

  /// Dual norm Phi_dual(x) = max_k <x, theta_k> / Phi(theta_k).
  double phi_dual(Vec2 x) const {
    double best = 0.0;
    for (int k = 0; k < n_dirs; ++k) {
      const double a = angle(k);
      best = std::max(best, (x.x * std::cos(a) + x.y * std::sin(a)) /
                                phi[static_cast<size_t>(k)]);
    }
    return best;
  }
};

inline AnisotropyTable build_direction_table(const Norm& desc, double alpha,
                                             int n_dirs = 1024) {
  check_alpha(alpha);
  require(desc.dim() == 2, "direction tables are 2-D");
  require(n_dirs >= 64, "direction table needs n_dirs >= 64");
  require(n_dirs % 2 == 0, "direction table needs an even n_dirs");

  AnisotropyTable t;
  t.alpha = alpha;
  t.n_dirs = n_dirs;
  t.c_n_alpha = c_const(2, alpha);
  t.lambda = lambda_const(2, alpha);
  t.mu.resize(static_cast<size_t>(n_dirs));
  t.amat.resize(static_cast<size_t>(n_dirs));
  t.phi.resize(static_cast<size_t>(n_dirs));

  parallel_for(0, n_dirs, [&](std::int64_t k) {
    const double a = t.angle(static_cast<int>(k));
    const Vec2 p{std::cos(a), std::sin(a)};
    const double xy[2] = {p.x, p.y};
    const auto span_p = std::span<const double>(xy, 2);
    const double m = mobility_mu(desc, alpha, span_p);
    t.mu[static_cast<size_t>(k)] = m;
    t.phi[static_cast<size_t>(k)] = m;  // |p| = 1
    const SymMat am = anisotropy_matrix(desc, alpha, span_p);
    t.amat[static_cast<size_t>(k)] = Mat2{am.at(0, 0), am.at(0, 1), am.at(1, 1)};
  });

  // Wulff boundary {x : <x, theta_k> <= Phi_k for all k}: consecutive support
  // lines intersect on the boundary because Phi is the support function.
  t.wulff_vertices.resize(static_cast<size_t>(n_dirs));
  for (int k = 0; k < n_dirs; ++k) {
    const int k1 = (k + 1) % n_dirs;
    const double a0 = t.angle(k), a1 = t.angle(k1);
    const double c0 = std::cos(a0), s0 = std::sin(a0);
    const double c1 = std::cos(a1), s1 = std::sin(a1);
    const double det = c0 * s1 - s0 * c1;  // sin(a1 - a0) > 0
    const double h0 = t.phi[static_cast<size_t>(k)], h1 = t.phi[static_cast<size_t>(k1)];
    t.wulff_vertices[static_cast<size_t>(k)] =
        Vec2{(h0 * s1 - h1 * s0) / det, (c0 * h1 - c1 * h0) / det};
  }

  // Record the measured 2-D characterization constant.
  double ratio_sum = 0.0;
  const int probes = 16;
  for (int k = 0; k < probes; ++k) {
    const double a = 2.0 * kPi * (k + 0.37) / probes;
    const Vec2 p{std::cos(a), std::sin(a)};
    const double num = mobility_norm_phi(desc, alpha, p);
    const double den = desc(Vec2{-p.y, p.x});
    ratio_sum += num / den;
  }
  t.phi_ratio_2d = ratio_sum / probes;
  return t;
}

/// Boundary polyline of c * W, W = {x : <x,theta> <= Phi(theta)}. Convex and
/// centrally symmetric.
inline FrontPolyline wulff_boundary(double c, const AnisotropyTable& t) {
  require(c > 0.0, "Wulff scaling c must be positive");
  FrontPolyline f;
  f.loops.emplace_back();
  auto& loop = f.loops.back();
  loop.reserve(t.wulff_vertices.size());
  for (Vec2 v : t.wulff_vertices) loop.push_back(v * c);
  return f;
}

}  // namespace frontflow
