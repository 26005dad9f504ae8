#pragma once

/// Front extraction (marching squares over cell-center samples) and polyline
/// distance diagnostics in the Euclidean or dual-mobility metric.
///
/// The contour of {value > 0} is traced with the positive region on the left.
/// Crossings interpolate linearly along cell edges, which for the binary
/// phase field lands exactly on edge midpoints. Cells outside the grid count
/// as negative, so loops always close.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "frontflow/anisotropy.hpp"
#include "frontflow/grid.hpp"
#include "frontflow/polyline.hpp"

namespace frontflow {

namespace detail {

// Lattice edge key: horizontal (type 0) edge from sample (i,j) to (i+1,j),
// vertical (type 1) from (i,j) to (i,j+1). Samples range over [-1, n].
inline std::int64_t edge_key(int i, int j, int type, int nx) {
  return ((static_cast<std::int64_t>(j + 1) * (nx + 3) + (i + 1)) << 1) | type;
}

template <class Field>
FrontPolyline march_squares(int nx, int ny, const Field& value, double dx,
                            double ox, double oy) {
  auto sample = [&](int i, int j) -> double {
    if (i < 0 || j < 0 || i >= nx || j >= ny) return -1.0;  // outside: negative
    return value(i, j);
  };
  auto point_on_edge = [&](int i, int j, int type) -> Vec2 {
    const double va = sample(i, j);
    const double vb = type == 0 ? sample(i + 1, j) : sample(i, j + 1);
    const double t = va / (va - vb);
    const double cx = ox + (i + 0.5) * dx, cy = oy + (j + 0.5) * dx;
    return type == 0 ? Vec2{cx + t * dx, cy} : Vec2{cx, cy + t * dx};
  };

  // Directed transitions src-edge -> dst-edge, positive phase on the left.
  std::unordered_map<std::int64_t, std::int64_t> next;
  std::unordered_map<std::int64_t, Vec2> points;
  next.reserve(1024);

  auto add = [&](std::int64_t src, std::int64_t dst, int si, int sj, int st,
                 int di, int dj, int dt) {
    next.emplace(src, dst);
    points.try_emplace(src, point_on_edge(si, sj, st));
    points.try_emplace(dst, point_on_edge(di, dj, dt));
  };

  for (int j = -1; j < ny; ++j)
    for (int i = -1; i < nx; ++i) {
      const bool c0 = sample(i, j) > 0.0, c1 = sample(i + 1, j) > 0.0;
      const bool c2 = sample(i + 1, j + 1) > 0.0, c3 = sample(i, j + 1) > 0.0;
      const int m = (c0 ? 1 : 0) | (c1 ? 2 : 0) | (c2 ? 4 : 0) | (c3 ? 8 : 0);
      if (m == 0 || m == 15) continue;
      const std::int64_t B = edge_key(i, j, 0, nx), T = edge_key(i, j + 1, 0, nx);
      const std::int64_t L = edge_key(i, j, 1, nx), R = edge_key(i + 1, j, 1, nx);
      auto AB = [&](std::int64_t s, std::int64_t d) {
        const int si = s == B ? i : (s == T ? i : (s == L ? i : i + 1));
        const int sj = s == T ? j + 1 : j;
        const int st = (s == L || s == R) ? 1 : 0;
        const int di = d == R ? i + 1 : i;
        const int dj = d == T ? j + 1 : j;
        const int dt = (d == L || d == R) ? 1 : 0;
        add(s, d, si, sj, st, di, dj, dt);
      };
      switch (m) {
        case 1: AB(B, L); break;
        case 2: AB(R, B); break;
        case 3: AB(R, L); break;
        case 4: AB(T, R); break;
        case 6: AB(T, B); break;
        case 8: AB(L, T); break;
        case 9: AB(B, T); break;
        case 12: AB(L, R); break;
        case 7: AB(T, L); break;
        case 11: AB(R, T); break;
        case 13: AB(B, R); break;
        case 14: AB(L, B); break;
        case 5: {  // saddle: resolve with the center average; ties negative
          const double c = sample(i, j) + sample(i + 1, j) + sample(i + 1, j + 1) +
                           sample(i, j + 1);
          if (c > 0.0) {
            AB(B, R);
            AB(T, L);
          } else {
            AB(B, L);
            AB(T, R);
          }
          break;
        }
        case 10: {
          const double c = sample(i, j) + sample(i + 1, j) + sample(i + 1, j + 1) +
                           sample(i, j + 1);
          if (c > 0.0) {
            AB(L, B);
            AB(R, T);
          } else {
            AB(R, B);
            AB(L, T);
          }
          break;
        }
        default: break;
      }
    }

  FrontPolyline out;
  std::unordered_map<std::int64_t, bool> used;
  for (const auto& [src, dst] : next) {
    if (used[src]) continue;
    std::vector<Vec2> loop;
    std::int64_t cur = src;
    while (!used[cur]) {
      used[cur] = true;
      loop.push_back(points.at(cur));
      auto it = next.find(cur);
      if (it == next.end()) break;  // should not happen: transitions close
      cur = it->second;
    }
    if (loop.size() >= 3) out.loops.push_back(std::move(loop));
  }
  return out;
}

}  // namespace detail

/// Zero contour of the phase field; empty positive region yields an empty
/// polyline (not an error).
inline FrontPolyline extract_front(const PhaseGrid& g) {
  require(g.spec.rank == 2, "front extraction is 2-D");
  return detail::march_squares(
      g.spec.cells[0], g.spec.cells[1],
      [&](int i, int j) { return static_cast<double>(g.at(i, j)); }, g.spec.dx,
      g.spec.origin[0], g.spec.origin[1]);
}

/// Zero contour of a real-valued field given through an accessor.
template <class Field>
FrontPolyline extract_front_field(int nx, int ny, const Field& value, double dx,
                                  double ox, double oy) {
  return detail::march_squares(nx, ny, value, dx, ox, oy);
}

// ---------------------------------------------------------------------------
// Distance diagnostics.

struct FrontMetric {
  const AnisotropyTable* table = nullptr;  ///< null: Euclidean

  double operator()(Vec2 d) const { return table ? table->phi_dual(d) : norm2(d); }
  double lower_factor() const {  // metric(d) >= |d| * lower_factor
    if (!table) return 1.0;
    double hi = 0.0;
    for (double p : table->phi) hi = std::max(hi, p);
    return 1.0 / hi;
  }
  double upper_factor() const {  // metric(d) <= |d| * upper_factor
    if (!table) return 1.0;
    double lo = std::numeric_limits<double>::infinity();
    for (double p : table->phi) lo = std::min(lo, p);
    return 1.0 / lo;
  }
};

namespace detail {

struct Segment {
  Vec2 a, b;
};

inline double seg_dist_euclid(Vec2 p, const Segment& s) {
  const Vec2 e = s.b - s.a;
  const double ee = dot(e, e);
  const double t = ee > 0.0 ? std::clamp(dot(p - s.a, e) / ee, 0.0, 1.0) : 0.0;
  return norm2(p - (s.a + e * t));
}

/// Metric distance point-to-segment; the metric is convex along the segment,
/// so golden-section search converges.
inline double seg_dist_metric(Vec2 p, const Segment& s, const FrontMetric& m) {
  if (!m.table) return seg_dist_euclid(p, s);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = 0.0, hi = 1.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  const Vec2 e = s.b - s.a;
  auto f = [&](double t) { return m(p - (s.a + e * t)); };
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 40; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::min({f(lo), f(hi), f1, f2});
}

/// Uniform bucket index over segments for nearest-segment queries.
class SegmentIndex {
 public:
  explicit SegmentIndex(const FrontPolyline& f) {
    for (const auto& loop : f.loops) {
      const size_t n = loop.size();
      for (size_t i = 0; i < n; ++i) segs_.push_back({loop[i], loop[(i + 1) % n]});
    }
    require(!segs_.empty(), "distance query against an empty polyline");
    double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
    double len_sum = 0.0;
    for (const auto& s : segs_) {
      min_x = std::min({min_x, s.a.x, s.b.x});
      max_x = std::max({max_x, s.a.x, s.b.x});
      min_y = std::min({min_y, s.a.y, s.b.y});
      max_y = std::max({max_y, s.a.y, s.b.y});
      len_sum += norm2(s.b - s.a);
    }
    lo_ = {min_x, min_y};
    h_ = std::max(1e-12, 2.0 * len_sum / static_cast<double>(segs_.size()));
    nx_ = std::max(1, static_cast<int>((max_x - min_x) / h_) + 1);
    ny_ = std::max(1, static_cast<int>((max_y - min_y) / h_) + 1);
    buckets_.resize(static_cast<size_t>(nx_) * ny_);
    for (size_t k = 0; k < segs_.size(); ++k) {
      const auto& s = segs_[k];
      const int i0 = cell_x(std::min(s.a.x, s.b.x)), i1 = cell_x(std::max(s.a.x, s.b.x));
      const int j0 = cell_y(std::min(s.a.y, s.b.y)), j1 = cell_y(std::max(s.a.y, s.b.y));
      for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i)
          buckets_[static_cast<size_t>(j) * nx_ + i].push_back(static_cast<int>(k));
    }
  }

  /// Euclidean distance to the nearest segment (expanding ring search).
  double nearest_euclid(Vec2 p) const {
    const int ci = cell_x(p.x), cj = cell_y(p.y);
    double best = std::numeric_limits<double>::infinity();
    const int max_ring = std::max(nx_, ny_) + 2;
    for (int ring = 0; ring <= max_ring; ++ring) {
      if (best < (ring - 1) * h_) break;  // no closer segment can exist
      for (int j = cj - ring; j <= cj + ring; ++j)
        for (int i = ci - ring; i <= ci + ring; ++i) {
          if (std::max(std::abs(i - ci), std::abs(j - cj)) != ring) continue;
          if (i < 0 || j < 0 || i >= nx_ || j >= ny_) continue;
          for (int k : buckets_[static_cast<size_t>(j) * nx_ + i])
            best = std::min(best, seg_dist_euclid(p, segs_[static_cast<size_t>(k)]));
        }
    }
    return best;
  }

  /// Metric distance to the nearest segment. Candidates are prefiltered with
  /// the Euclidean bound: a segment farther than d_e * (upper/lower metric
  /// equivalence) cannot beat the Euclidean-nearest one.
  double nearest_metric(Vec2 p, const FrontMetric& m) const {
    if (!m.table) return nearest_euclid(p);
    const double d_e = nearest_euclid(p);
    const double cutoff = d_e * m.upper_factor() / m.lower_factor() + 1e-15;
    const int ci = cell_x(p.x), cj = cell_y(p.y);
    const int ring_max = static_cast<int>(cutoff / h_) + 2;
    double best = std::numeric_limits<double>::infinity();
    for (int j = cj - ring_max; j <= cj + ring_max; ++j)
      for (int i = ci - ring_max; i <= ci + ring_max; ++i) {
        if (i < 0 || j < 0 || i >= nx_ || j >= ny_) continue;
        for (int k : buckets_[static_cast<size_t>(j) * nx_ + i]) {
          const auto& s = segs_[static_cast<size_t>(k)];
          if (seg_dist_euclid(p, s) > cutoff) continue;
          best = std::min(best, seg_dist_metric(p, s, m));
        }
      }
    return best;
  }

 private:
  int cell_x(double x) const {
    return std::clamp(static_cast<int>((x - lo_.x) / h_), 0, nx_ - 1);
  }
  int cell_y(double y) const {
    return std::clamp(static_cast<int>((y - lo_.y) / h_), 0, ny_ - 1);
  }

  std::vector<Segment> segs_;
  std::vector<std::vector<int>> buckets_;
  Vec2 lo_;
  double h_ = 1.0;
  int nx_ = 1, ny_ = 1;
};

}  // namespace detail

/// max over vertices of `a` of the metric distance to the segments of `b`.
inline double directed_hausdorff(const FrontPolyline& a, const FrontPolyline& b,
                                 const FrontMetric& metric = {}) {
  require(!a.empty() && !b.empty(), "Hausdorff distance of an empty polyline");
  const detail::SegmentIndex index(b);
  double worst = 0.0;
  for (const auto& loop : a.loops)
    for (Vec2 v : loop) worst = std::max(worst, index.nearest_metric(v, metric));
  return worst;
}

inline double hausdorff(const FrontPolyline& a, const FrontPolyline& b,
                        const FrontMetric& metric = {}) {
  return std::max(directed_hausdorff(a, b, metric),
                  directed_hausdorff(b, a, metric));
}

/// min over vertex/segment pairs: the separation gap between two fronts.
inline double front_gap(const FrontPolyline& a, const FrontPolyline& b,
                        const FrontMetric& metric = {}) {
  require(!a.empty() && !b.empty(), "gap of an empty polyline");
  const detail::SegmentIndex ib(b);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& loop : a.loops)
    for (Vec2 v : loop) best = std::min(best, ib.nearest_metric(v, metric));
  const detail::SegmentIndex ia(a);
  for (const auto& loop : b.loops)
    for (Vec2 v : loop) best = std::min(best, ia.nearest_metric(v, metric));
  return best;
}

}  // namespace frontflow
