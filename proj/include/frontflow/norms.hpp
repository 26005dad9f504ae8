#pragma once

/// Anisotropy norms on R^N: Euclidean, p-norms, ellipse gauges and centrally
/// symmetric polygon gauges (N=2). Immutable after construction; all
/// evaluations are exact up to roundoff.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "frontflow/common.hpp"

namespace frontflow {

enum class NormKind { euclidean, pnorm, ellipse, polygon };

inline const char* to_string(NormKind k) {
  switch (k) {
    case NormKind::euclidean: return "euclidean";
    case NormKind::pnorm: return "pnorm";
    case NormKind::ellipse: return "ellipse";
    case NormKind::polygon: return "polygon";
  }
  return "?";
}

namespace detail {

/// Convex hull (counterclockwise, no duplicate endpoints) via monotone chain.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  const size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Vec2> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  const size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace detail

/// A symmetric norm on R^N. The descriptor is the value; evaluation does not
/// allocate. Safe for concurrent reads.
class Norm {
 public:
  static Norm euclidean(int dim) {
    Norm n;
    n.kind_ = NormKind::euclidean;
    n.dim_ = check_dim(dim);
    return n;
  }

  /// q in [1, inf]; pass std::numeric_limits<double>::infinity() for max-norm.
  static Norm pnorm(int dim, double q) {
    require(q >= 1.0, "pnorm exponent q must satisfy q >= 1, got " + std::to_string(q));
    Norm n;
    n.kind_ = NormKind::pnorm;
    n.dim_ = check_dim(dim);
    n.q_ = q;
    return n;
  }

  /// Gauge sqrt(x^T M x) of a symmetric positive-definite matrix (row-major).
  static Norm ellipse(int dim, std::vector<double> m_row_major) {
    const int d = check_dim(dim);
    require(m_row_major.size() == static_cast<size_t>(d) * d,
            "ellipse matrix must have dim*dim entries");
    Norm n;
    n.kind_ = NormKind::ellipse;
    n.dim_ = d;
    n.mat_ = std::move(m_row_major);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        require(std::abs(n.mat_[i * d + j] - n.mat_[j * d + i]) <=
                    1e-12 * (1.0 + std::abs(n.mat_[i * d + j])),
                "ellipse matrix must be symmetric");
    n.eigs_ = sym_eigenvalues(n.mat_, d);
    require(n.eigs_.front() > 0.0, "ellipse matrix must be positive definite");
    return n;
  }

  /// Minkowski gauge of the convex hull of a centrally symmetric 2-D vertex
  /// set. Rejects hulls that are not symmetric within 1e-12 (relative).
  static Norm polygon(std::vector<Vec2> vertices) {
    require(vertices.size() >= 4, "polygon norm needs at least 4 vertices");
    Norm n;
    n.kind_ = NormKind::polygon;
    n.dim_ = 2;
    n.verts_ = detail::convex_hull(std::move(vertices));
    require(n.verts_.size() >= 4, "polygon vertex hull is degenerate");
    double scale = 0.0;
    for (Vec2 v : n.verts_) scale = std::max(scale, std::max(std::abs(v.x), std::abs(v.y)));
    for (Vec2 v : n.verts_) {
      double best = std::numeric_limits<double>::infinity();
      for (Vec2 w : n.verts_) best = std::min(best, norm2(v + w));
      require(best <= 1e-12 * scale, "polygon vertex hull is not centrally symmetric");
    }
    // Support form: gauge(x) = max_i <n_i, x> / c_i over hull edges.
    const size_t m = n.verts_.size();
    for (size_t i = 0; i < m; ++i) {
      Vec2 a = n.verts_[i], b = n.verts_[(i + 1) % m];
      Vec2 nrm = -perp(b - a);  // outward for a CCW hull
      double c = dot(nrm, a);
      require(c > 0.0, "polygon hull does not contain the origin in its interior");
      n.edge_n_.push_back(nrm);
      n.edge_c_.push_back(c);
    }
    return n;
  }

  NormKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double pnorm_q() const { return q_; }
  const std::vector<double>& ellipse_matrix() const { return mat_; }
  const std::vector<Vec2>& polygon_vertices() const { return verts_; }

  double operator()(std::span<const double> x) const { return eval(x); }
  double operator()(Vec2 v) const {
    const double xy[2] = {v.x, v.y};
    return eval(std::span<const double>(xy, 2));
  }

  double eval(std::span<const double> x) const {
    require(static_cast<int>(x.size()) == dim_,
            "norm argument has dimension " + std::to_string(x.size()) +
                ", descriptor expects " + std::to_string(dim_));
    switch (kind_) {
      case NormKind::euclidean: {
        double s = 0.0;
        for (double xi : x) s += xi * xi;
        return std::sqrt(s);
      }
      case NormKind::pnorm: {
        if (std::isinf(q_)) {
          double m = 0.0;
          for (double xi : x) m = std::max(m, std::abs(xi));
          return m;
        }
        if (q_ == 1.0) {
          double s = 0.0;
          for (double xi : x) s += std::abs(xi);
          return s;
        }
        if (q_ == 2.0) {
          double s = 0.0;
          for (double xi : x) s += xi * xi;
          return std::sqrt(s);
        }
        // scale out the max to avoid overflow for large q
        double m = 0.0;
        for (double xi : x) m = std::max(m, std::abs(xi));
        if (m == 0.0) return 0.0;
        double s = 0.0;
        for (double xi : x) s += std::pow(std::abs(xi) / m, q_);
        return m * std::pow(s, 1.0 / q_);
      }
      case NormKind::ellipse: {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i)
          for (int j = 0; j < dim_; ++j) s += x[i] * mat_[i * dim_ + j] * x[j];
        return std::sqrt(std::max(0.0, s));
      }
      case NormKind::polygon: {
        Vec2 v{x[0], x[1]};
        double g = 0.0;
        for (size_t i = 0; i < edge_n_.size(); ++i)
          g = std::max(g, dot(edge_n_[i], v) / edge_c_[i]);
        return g;
      }
    }
    return 0.0;
  }

  /// Smallest computable C >= 1 with C^{-1}|x| <= N(x) <= C|x|.
  /// Exact for euclidean/pnorm/ellipse; polygon sampled over 4096 angles and
  /// inflated by the 1.01 safety factor.
  double equivalence_constant() const {
    switch (kind_) {
      case NormKind::euclidean: return 1.0;
      case NormKind::pnorm: {
        if (std::isinf(q_)) return std::sqrt(static_cast<double>(dim_));
        const double e = std::abs(1.0 / q_ - 0.5);
        return std::pow(static_cast<double>(dim_), e);
      }
      case NormKind::ellipse: {
        const double lo = eigs_.front(), hi = eigs_.back();
        return std::max(std::sqrt(hi), 1.0 / std::sqrt(lo));
      }
      case NormKind::polygon: {
        constexpr int kAngles = 4096;
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int k = 0; k < kAngles; ++k) {
          const double a = 2.0 * kPi * k / kAngles;
          const double g = (*this)(Vec2{std::cos(a), std::sin(a)});
          lo = std::min(lo, g);
          hi = std::max(hi, g);
        }
        return 1.01 * std::max(hi, 1.0 / lo);
      }
    }
    return 1.0;
  }

 private:
  static int check_dim(int dim) {
    require(dim >= 2, "norm dimension must be >= 2");
    return dim;
  }

  /// Eigenvalues of a symmetric matrix, ascending (cyclic Jacobi).
  static std::vector<double> sym_eigenvalues(std::vector<double> a, int n) {
    for (int sweep = 0; sweep < 64; ++sweep) {
      double off = 0.0;
      for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
      if (off < 1e-30) break;
      for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
          const double apq = a[p * n + q];
          if (std::abs(apq) < 1e-300) continue;
          const double theta = 0.5 * (a[q * n + q] - a[p * n + p]) / apq;
          const double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
          for (int k = 0; k < n; ++k) {
            const double akp = a[k * n + p], akq = a[k * n + q];
            a[k * n + p] = c * akp - s * akq;
            a[k * n + q] = s * akp + c * akq;
          }
          for (int k = 0; k < n; ++k) {
            const double apk = a[p * n + k], aqk = a[q * n + k];
            a[p * n + k] = c * apk - s * aqk;
            a[q * n + k] = s * apk + c * aqk;
          }
        }
    }
    std::vector<double> ev(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) ev[static_cast<size_t>(i)] = a[i * n + i];
    std::sort(ev.begin(), ev.end());
    return ev;
  }

  NormKind kind_ = NormKind::euclidean;
  int dim_ = 2;
  double q_ = 2.0;
  std::vector<double> mat_;   // ellipse, row-major
  std::vector<double> eigs_;  // ellipse eigenvalues, ascending
  std::vector<Vec2> verts_;   // polygon hull, CCW
  std::vector<Vec2> edge_n_;  // polygon edge outward normals
  std::vector<double> edge_c_;
};

}  // namespace frontflow
