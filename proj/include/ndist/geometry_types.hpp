#pragma once

#include <cmath>

#include "ndist/rational.hpp"

namespace ndist {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point2&) const = default;
  auto operator<=>(const Point2&) const = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double t, Point2 a) { return {t * a.x, t * a.y}; }

inline double euclidean(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Planar point with exact rational coordinates.
struct ExactPoint2 {
  Rational x{0};
  Rational y{0};

  bool operator==(const ExactPoint2&) const = default;
};

inline Point2 to_point2(const ExactPoint2& p) { return {to_double(p.x), to_double(p.y)}; }

}  // namespace ndist
