#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace frontflow {

/// Error type thrown on violated preconditions, bad configs and I/O failures.
/// The message always names the violated constraint.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

inline void require(bool ok, const std::string& msg) {
  if (!ok) fail(msg);
}

constexpr double kPi = 3.14159265358979323846;

inline void check_alpha(double alpha) {
  if (!(alpha >= 1.0 && alpha < 2.0))
    fail("alpha must be in [1,2), got " + std::to_string(alpha));
}

// ---------------------------------------------------------------------------
// Small fixed-size linear algebra, enough for the N=2/3 front-tracking code.

struct Vec2 {
  double x = 0.0, y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return std::sqrt(dot(a, a)); }
/// Counterclockwise rotation by 90 degrees.
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

/// Symmetric 2x2 matrix.
struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a22 = 0.0;

  static Mat2 outer(Vec2 t) { return {t.x * t.x, t.x * t.y, t.y * t.y}; }
  Mat2 operator+(Mat2 o) const { return {a11 + o.a11, a12 + o.a12, a22 + o.a22}; }
  Mat2 operator*(double s) const { return {a11 * s, a12 * s, a22 * s}; }
  double trace() const { return a11 + a22; }
  /// Largest eigenvalue of the symmetric matrix.
  double lambda_max() const {
    const double m = 0.5 * (a11 + a22);
    const double d = std::sqrt(0.25 * (a11 - a22) * (a11 - a22) + a12 * a12);
    return m + d;
  }
};

inline Vec2 mul(const Mat2& m, Vec2 v) {
  return {m.a11 * v.x + m.a12 * v.y, m.a12 * v.x + m.a22 * v.y};
}

// Hausdorff measure of the unit sphere S^{N-1}.
inline double sphere_measure(int n) {
  switch (n) {
    case 1: return 2.0;               // S^0, two points
    case 2: return 2.0 * kPi;         // S^1
    case 3: return 4.0 * kPi;         // S^2
    default: {
      // omega_{N-1} = 2 pi^{N/2} / Gamma(N/2)
      return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
    }
  }
}

// ---------------------------------------------------------------------------
// Row-parallel work sharing. Deterministic: partition does not depend on
// scheduling, every index is written by exactly one worker.

inline int default_threads() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

inline void parallel_for(std::int64_t begin, std::int64_t end,
                         const std::function<void(std::int64_t)>& body,
                         int threads = 0) {
  if (threads <= 0) threads = default_threads();
  const std::int64_t n = end - begin;
  if (n <= 0) return;
  if (threads == 1 || n < 2 * threads) {
    for (std::int64_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  const std::int64_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::int64_t lo = begin + t * chunk;
    const std::int64_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::int64_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace frontflow
