#pragma once

#include <cmath>

namespace asqg {

/// Cartesian point (or vector) in the plane; the horizontal period is 1.
struct Point {
  double x1 = 0.0;
  double x2 = 0.0;

  constexpr Point& operator+=(Point o) { x1 += o.x1; x2 += o.x2; return *this; }
  constexpr Point& operator-=(Point o) { x1 -= o.x1; x2 -= o.x2; return *this; }
  constexpr Point& operator*=(double s) { x1 *= s; x2 *= s; return *this; }
  friend constexpr bool operator==(Point, Point) = default;
};

constexpr Point operator+(Point a, Point b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
constexpr Point operator-(Point a, Point b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
constexpr Point operator-(Point a) { return {-a.x1, -a.x2}; }
constexpr Point operator*(double s, Point a) { return {s * a.x1, s * a.x2}; }
constexpr Point operator*(Point a, double s) { return {s * a.x1, s * a.x2}; }
constexpr double dot(Point a, Point b) { return a.x1 * b.x1 + a.x2 * b.x2; }
/// x^perp = (-x2, x1)
constexpr Point perp(Point a) { return {-a.x2, a.x1}; }
inline double norm(Point a) { return std::hypot(a.x1, a.x2); }
constexpr double norm2(Point a) { return a.x1 * a.x1 + a.x2 * a.x2; }
inline bool is_finite(Point a) { return std::isfinite(a.x1) && std::isfinite(a.x2); }

/// Lattice point n_j = (j, 0).
constexpr Point lattice_point(long j) { return {static_cast<double>(j), 0.0}; }

/// Covering map onto the fundamental strip: (x1 - floor(x1 + 1/2), x2).
inline Point covering_map(Point x) { return {x.x1 - std::floor(x.x1 + 0.5), x.x2}; }

/// Symmetric 2x2 tensor (second derivatives).
struct Sym2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;
};

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

}  // namespace asqg
