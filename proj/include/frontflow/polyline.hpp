#pragma once

/// Closed front polylines (zero-level-set contours) and their elementary
/// geometry: signed area, perimeter, convex hull, convexity defect, radius
/// statistics. Orientation convention: the positive-phase region lies on the
/// left of the traversal, so outer loops are counterclockwise.

#include <algorithm>
#include <cmath>
#include <vector>

#include "frontflow/common.hpp"
#include "frontflow/norms.hpp"

namespace frontflow {

struct FrontPolyline {
  std::vector<std::vector<Vec2>> loops;  ///< closed; last vertex connects to first

  bool empty() const {
    for (const auto& l : loops)
      if (l.size() >= 3) return false;
    return true;
  }
  size_t vertex_count() const {
    size_t n = 0;
    for (const auto& l : loops) n += l.size();
    return n;
  }
};

inline double signed_area(const std::vector<Vec2>& loop) {
  double a = 0.0;
  const size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) a += cross(loop[i], loop[(i + 1) % n]);
  return 0.5 * a;
}

inline double perimeter(const std::vector<Vec2>& loop) {
  double p = 0.0;
  const size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) p += norm2(loop[(i + 1) % n] - loop[i]);
  return p;
}

inline double total_area(const FrontPolyline& f) {
  double a = 0.0;
  for (const auto& l : f.loops) a += signed_area(l);
  return a;
}

inline double total_perimeter(const FrontPolyline& f) {
  double p = 0.0;
  for (const auto& l : f.loops) p += perimeter(l);
  return p;
}

/// 1 - area/hull_area for one loop; 0 for convex loops.
inline double loop_convexity_defect(const std::vector<Vec2>& loop) {
  require(loop.size() >= 3, "convexity defect needs a non-degenerate loop");
  const double a = std::abs(signed_area(loop));
  const auto hull = detail::convex_hull(loop);
  const double ha = std::abs(signed_area(hull));
  if (ha <= 0.0) return 0.0;
  return std::max(0.0, 1.0 - a / ha);
}

/// Max per-loop defect. Multi-loop fronts report the worst loop.
inline double convexity_defect(const FrontPolyline& f) {
  require(!f.empty(), "convexity defect of an empty front");
  double d = 0.0;
  for (const auto& l : f.loops)
    if (l.size() >= 3) d = std::max(d, loop_convexity_defect(l));
  return d;
}

struct RadiusStats {
  double min = 0.0, mean = 0.0, max = 0.0;
};

inline RadiusStats radius_stats(const FrontPolyline& f, Vec2 center) {
  require(!f.empty(), "radius stats of an empty front");
  RadiusStats s;
  s.min = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  size_t n = 0;
  for (const auto& l : f.loops)
    for (Vec2 v : l) {
      const double r = norm2(v - center);
      s.min = std::min(s.min, r);
      s.max = std::max(s.max, r);
      sum += r;
      ++n;
    }
  s.mean = sum / static_cast<double>(n);
  return s;
}

}  // namespace frontflow
