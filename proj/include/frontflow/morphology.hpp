#pragma once

/// Gauge-metric distance transforms on 2-D grids and the Wulff dilation /
/// erosion they induce. Distances propagate Dijkstra-style over a radius-3
/// chamfer stencil whose edge weights come from the chosen gauge, so the
/// result is a (slightly over-estimating) polygonal approximation of the true
/// metric distance, accurate to a couple of cells at the scales used here.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "frontflow/anisotropy.hpp"
#include "frontflow/geometry.hpp"
#include "frontflow/grid.hpp"

namespace frontflow {

namespace detail {

/// Coprime offsets up to radius 3 (one representative per direction; both
/// orientations are generated at use time).
inline const std::vector<std::pair<int, int>>& chamfer_offsets() {
  static const std::vector<std::pair<int, int>> offs = [] {
    std::vector<std::pair<int, int>> v;
    for (int a = -3; a <= 3; ++a)
      for (int b = -3; b <= 3; ++b) {
        if (a == 0 && b == 0) continue;
        const int g = std::abs(std::gcd(a, b));
        if (g != 1) continue;
        v.emplace_back(a, b);
      }
    return v;
  }();
  return offs;
}

}  // namespace detail

/// Distance from every cell to the source set {mask != 0}, in the metric
/// metric(offset). Source cells get 0. Unreachable cells (none here, the
/// stencil is connected) would keep +inf.
inline std::vector<double> distance_transform(
    const GridSpec& spec, const std::vector<std::uint8_t>& mask,
    const std::function<double(Vec2)>& metric) {
  require(spec.rank == 2, "distance transforms are 2-D");
  const int nx = spec.cells[0], ny = spec.cells[1];
  const std::int64_t n = static_cast<std::int64_t>(nx) * ny;
  require(static_cast<std::int64_t>(mask.size()) == n, "mask size mismatch");

  const auto& offs = detail::chamfer_offsets();
  std::vector<double> w(offs.size());
  for (size_t k = 0; k < offs.size(); ++k)
    w[k] = metric(Vec2{offs[k].first * spec.dx, offs[k].second * spec.dx});

  std::vector<double> dist(static_cast<size_t>(n),
                           std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::int64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (std::int64_t i = 0; i < n; ++i)
    if (mask[static_cast<size_t>(i)]) {
      dist[static_cast<size_t>(i)] = 0.0;
      heap.emplace(0.0, i);
    }
  while (!heap.empty()) {
    const auto [d, idx] = heap.top();
    heap.pop();
    if (d > dist[static_cast<size_t>(idx)]) continue;
    const int i = static_cast<int>(idx % nx), j = static_cast<int>(idx / nx);
    for (size_t k = 0; k < offs.size(); ++k) {
      const int ii = i + offs[k].first, jj = j + offs[k].second;
      if (ii < 0 || jj < 0 || ii >= nx || jj >= ny) continue;
      const std::int64_t nidx = static_cast<std::int64_t>(jj) * nx + ii;
      const double nd = d + w[k];
      if (nd < dist[static_cast<size_t>(nidx)]) {
        dist[static_cast<size_t>(nidx)] = nd;
        heap.emplace(nd, nidx);
      }
    }
  }
  return dist;
}

inline std::function<double(Vec2)> euclid_metric() {
  return [](Vec2 d) { return norm2(d); };
}

inline std::function<double(Vec2)> phi_dual_metric(const AnisotropyTable& t) {
  return [&t](Vec2 d) { return t.phi_dual(d); };
}

/// Minkowski dilation (radius > 0) or erosion (radius < 0) of the +1 phase by
/// |radius| * W, W the unit ball of the dual mobility norm. Erosion to the
/// empty set is allowed.
inline PhaseGrid wulff_morph(const PhaseGrid& g, double radius,
                             const AnisotropyTable& table) {
  require(g.spec.rank == 2, "morphology is 2-D");
  require(std::abs(radius) >= g.spec.dx,
          "morph radius below one cell cannot move the set");
  const std::int64_t n = g.spec.cell_count();
  std::vector<std::uint8_t> mask(static_cast<size_t>(n));
  const bool dilate = radius > 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const bool in = g.phase[static_cast<size_t>(i)] > 0;
    mask[static_cast<size_t>(i)] = dilate ? in : !in;
  }
  const auto dist = distance_transform(g.spec, mask, phi_dual_metric(table));
  PhaseGrid out = g;
  const double r = std::abs(radius);
  for (std::int64_t i = 0; i < n; ++i) {
    const bool in = g.phase[static_cast<size_t>(i)] > 0;
    bool now;
    if (dilate)
      now = in || dist[static_cast<size_t>(i)] < r;
    else
      now = in && dist[static_cast<size_t>(i)] > r;
    out.phase[static_cast<size_t>(i)] = now ? 1 : -1;
  }
  if (dilate) check_margin(out, "dilation");
  return out;
}

/// Polyline variant: rasterizes onto a scratch grid, morphs, re-extracts.
/// dx defaults to |radius|/8.
inline FrontPolyline wulff_morph(const FrontPolyline& f, double radius,
                                 const AnisotropyTable& table, double dx = 0.0) {
  require(!f.empty(), "morph of an empty polyline");
  if (dx <= 0.0) dx = std::abs(radius) / 8.0;
  double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
  for (const auto& loop : f.loops)
    for (Vec2 v : loop) {
      min_x = std::min(min_x, v.x);
      max_x = std::max(max_x, v.x);
      min_y = std::min(min_y, v.y);
      max_y = std::max(max_y, v.y);
    }
  // pad by the worst-case reach of the structuring element plus a few cells
  double reach = 0.0;
  for (Vec2 v : table.wulff_vertices) reach = std::max(reach, norm2(v));
  const double margin_len = std::abs(radius) * reach + 4.0 * dx;

  GridSpec spec;
  spec.rank = 2;
  spec.dx = dx;
  spec.origin = {min_x - margin_len, min_y - margin_len, 0.0};
  spec.cells = {static_cast<int>((max_x - min_x + 2.0 * margin_len) / dx) + 1,
                static_cast<int>((max_y - min_y + 2.0 * margin_len) / dx) + 1, 1};

  PhaseGrid g;
  g.spec = spec;
  g.margin = 1;
  g.phase.assign(static_cast<size_t>(spec.cell_count()), -1);
  // even-odd rasterization against all loops
  for (int j = 0; j < spec.cells[1]; ++j)
    for (int i = 0; i < spec.cells[0]; ++i) {
      const Vec2 p = spec.center2(i, j);
      int crossings = 0;
      for (const auto& loop : f.loops) {
        const size_t m = loop.size();
        for (size_t k = 0; k < m; ++k) {
          const Vec2 a = loop[k], b = loop[(k + 1) % m];
          if ((a.y > p.y) != (b.y > p.y)) {
            const double x_at = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (x_at > p.x) ++crossings;
          }
        }
      }
      if (crossings % 2 == 1) g.phase[static_cast<size_t>(g.index(i, j))] = 1;
    }
  const PhaseGrid morphed = wulff_morph(g, radius, table);
  return extract_front(morphed);
}

}  // namespace frontflow
