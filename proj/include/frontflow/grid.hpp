#pragma once

/// Uniform N-D grids (N = 2 or 3) holding phase values in {-1,+1} or real
/// diagnostic fields, plus the initial-set specifications used to seed them.
/// Phase grids carry a margin band of cells that the positive phase must
/// never touch; the far-field model assumes phase -1 outside the domain.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "frontflow/common.hpp"
#include "frontflow/norms.hpp"

namespace frontflow {

struct GridSpec {
  int rank = 2;
  std::array<int, 3> cells = {0, 0, 1};
  double dx = 0.0;
  std::array<double, 3> origin = {0.0, 0.0, 0.0};  ///< lower domain corner

  std::int64_t cell_count() const {
    std::int64_t n = 1;
    for (int d = 0; d < rank; ++d) n *= cells[static_cast<size_t>(d)];
    return n;
  }
  double center(int axis, int i) const {
    return origin[static_cast<size_t>(axis)] + (i + 0.5) * dx;
  }
  Vec2 center2(int i, int j) const { return {center(0, i), center(1, j)}; }
  double extent(int axis) const { return cells[static_cast<size_t>(axis)] * dx; }

  /// Symmetric square/cubic domain [-half_extent, half_extent]^rank.
  static GridSpec symmetric(int rank, double half_extent, int cells_per_axis) {
    require(rank == 2 || rank == 3, "grids support rank 2 or 3");
    require(cells_per_axis >= 8, "grid needs at least 8 cells per axis");
    GridSpec g;
    g.rank = rank;
    g.dx = 2.0 * half_extent / cells_per_axis;
    for (int d = 0; d < rank; ++d) {
      g.cells[static_cast<size_t>(d)] = cells_per_axis;
      g.origin[static_cast<size_t>(d)] = -half_extent;
    }
    if (rank == 2) g.cells[2] = 1;
    return g;
  }
};

// ---------------------------------------------------------------------------
// Initial sets: balls, axis-aligned boxes, convex polygons and unions.

struct SetSpec {
  enum class Kind { ball, box, polygon, set_union };
  Kind kind = Kind::ball;
  std::array<double, 3> center = {0, 0, 0};
  double radius = 0.0;
  std::array<double, 3> lo = {0, 0, 0}, hi = {0, 0, 0};
  std::vector<Vec2> vertices;            // polygon (2-D), convex hull taken
  std::vector<SetSpec> parts;            // union

  static SetSpec ball(std::array<double, 3> c, double r) {
    require(r > 0.0, "ball radius must be positive");
    SetSpec s;
    s.kind = Kind::ball;
    s.center = c;
    s.radius = r;
    return s;
  }
  static SetSpec box(std::array<double, 3> lo, std::array<double, 3> hi) {
    SetSpec s;
    s.kind = Kind::box;
    s.lo = lo;
    s.hi = hi;
    return s;
  }
  static SetSpec polygon(std::vector<Vec2> verts) {
    require(verts.size() >= 3, "polygon set needs at least 3 vertices");
    SetSpec s;
    s.kind = Kind::polygon;
    s.vertices = detail::convex_hull(std::move(verts));
    require(s.vertices.size() >= 3, "polygon set hull is degenerate");
    return s;
  }
  static SetSpec make_union(std::vector<SetSpec> parts) {
    require(!parts.empty(), "union of zero sets");
    SetSpec s;
    s.kind = Kind::set_union;
    s.parts = std::move(parts);
    return s;
  }

  bool contains(std::span<const double> x) const {
    switch (kind) {
      case Kind::ball: {
        double d2 = 0.0;
        for (size_t i = 0; i < x.size(); ++i) {
          const double di = x[i] - center[i];
          d2 += di * di;
        }
        return d2 < radius * radius;
      }
      case Kind::box: {
        for (size_t i = 0; i < x.size(); ++i)
          if (!(x[i] > lo[i] && x[i] < hi[i])) return false;
        return true;
      }
      case Kind::polygon: {
        const Vec2 p{x[0], x[1]};
        const size_t n = vertices.size();
        for (size_t i = 0; i < n; ++i)
          if (cross(vertices[(i + 1) % n] - vertices[i], p - vertices[i]) <= 0.0)
            return false;
        return true;
      }
      case Kind::set_union: {
        for (const auto& part : parts)
          if (part.contains(x)) return true;
        return false;
      }
    }
    return false;
  }

  bool contains(Vec2 p) const {
    const double xy[2] = {p.x, p.y};
    return contains(std::span<const double>(xy, 2));
  }

  /// Euclidean signed distance, positive inside (2-D only).
  double signed_distance(Vec2 p) const {
    switch (kind) {
      case Kind::ball:
        return radius - norm2(p - Vec2{center[0], center[1]});
      case Kind::box: {
        const Vec2 c{0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])};
        const Vec2 half{0.5 * (hi[0] - lo[0]), 0.5 * (hi[1] - lo[1])};
        const Vec2 q{std::abs(p.x - c.x) - half.x, std::abs(p.y - c.y) - half.y};
        const Vec2 qp{std::max(q.x, 0.0), std::max(q.y, 0.0)};
        const double outside = norm2(qp);
        const double inside = std::min(std::max(q.x, q.y), 0.0);
        return -(outside + inside);
      }
      case Kind::polygon: {
        const size_t n = vertices.size();
        double d = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < n; ++i) {
          const Vec2 a = vertices[i], b = vertices[(i + 1) % n];
          const Vec2 e = b - a;
          const double t = std::clamp(dot(p - a, e) / dot(e, e), 0.0, 1.0);
          d = std::min(d, norm2(p - (a + e * t)));
        }
        return contains(p) ? d : -d;
      }
      case Kind::set_union: {
        double d = -std::numeric_limits<double>::infinity();
        for (const auto& part : parts) d = std::max(d, part.signed_distance(p));
        return d;
      }
    }
    return 0.0;
  }
};

// ---------------------------------------------------------------------------

struct PhaseGrid {
  GridSpec spec;
  double time = 0.0;
  int margin = 8;  ///< cells; the +1 phase must stay out of this band
  std::vector<std::int8_t> phase;  ///< entries exactly +1 or -1

  std::int64_t index(int i, int j) const {
    return static_cast<std::int64_t>(j) * spec.cells[0] + i;
  }
  std::int64_t index(int i, int j, int k) const {
    return (static_cast<std::int64_t>(k) * spec.cells[1] + j) * spec.cells[0] + i;
  }
  std::int8_t at(int i, int j) const { return phase[static_cast<size_t>(index(i, j))]; }

  std::int64_t positive_count() const {
    std::int64_t n = 0;
    for (auto v : phase) n += (v > 0);
    return n;
  }
  double positive_volume() const {
    return static_cast<double>(positive_count()) * std::pow(spec.dx, spec.rank);
  }
};

/// Throws if the +1 phase touches the outer margin band.
inline void check_margin(const PhaseGrid& g, const std::string& when) {
  const int m = g.margin;
  const int nx = g.spec.cells[0], ny = g.spec.cells[1];
  const int nz = g.spec.rank == 3 ? g.spec.cells[2] : 1;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const bool band = i < m || j < m || i >= nx - m || j >= ny - m ||
                          (g.spec.rank == 3 && (k < m || k >= nz - m));
        if (!band) {
          // interior rows: skip ahead to the right band
          if (i == m && j >= m && j < ny - m && (g.spec.rank == 2 || (k >= m && k < nz - m))) {
            i = nx - m - 1;
            continue;
          }
          continue;
        }
        const std::int64_t idx =
            g.spec.rank == 3 ? g.index(i, j, k) : g.index(i, j);
        if (g.phase[static_cast<size_t>(idx)] > 0)
          fail("front touches the domain margin (" + when +
               "): the far-field model assumes phase -1 outside");
      }
}

/// Phase +1 iff the cell center lies in the open initial set.
inline PhaseGrid init_phase(const GridSpec& spec, const SetSpec& init, int margin = 8) {
  require(spec.rank == 2 || spec.rank == 3, "phase grids support rank 2 or 3");
  require(margin >= 1, "margin must be at least one cell");
  PhaseGrid g;
  g.spec = spec;
  g.margin = margin;
  g.phase.assign(static_cast<size_t>(spec.cell_count()), -1);
  const int nx = spec.cells[0], ny = spec.cells[1];
  const int nz = spec.rank == 3 ? spec.cells[2] : 1;
  std::int64_t count = 0;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        double x[3] = {spec.center(0, i), spec.center(1, j),
                       spec.rank == 3 ? spec.center(2, k) : 0.0};
        const bool in = init.contains(std::span<const double>(x, static_cast<size_t>(spec.rank)));
        if (in) {
          const std::int64_t idx = spec.rank == 3 ? g.index(i, j, k) : g.index(i, j);
          g.phase[static_cast<size_t>(idx)] = 1;
          ++count;
        }
      }
  require(count > 0, "initial set contains no cell centers (empty phase)");
  check_margin(g, "initialization");
  return g;
}

}  // namespace frontflow
