#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ndist/core.hpp"
#include "ndist/geometry_types.hpp"
#include "ndist/space.hpp"

namespace ndist {

struct Circle {
  Point2 center;
  double radius = 0.0;
  /// Input points on the boundary that determine the circle (1 to 3).
  std::vector<Point2> support;
};

inline constexpr std::uint64_t kDefaultSecSeed = 0x5ec5ec5ecULL;

/// Smallest circle enclosing every point. Randomized incremental
/// construction on the sorted, deduplicated input shuffled by `seed`, so the
/// result does not depend on input order. Throws ArgumentError on empty or
/// non-finite input.
Circle smallest_enclosing_circle(std::span<const Point2> points, std::uint64_t seed = kDefaultSecSeed);

/// Circle through three points; falls back to the widest pair's diametral
/// circle when they are (numerically) collinear.
Circle circumcircle(const Point2& a, const Point2& b, const Point2& c);
Circle diametral_circle(const Point2& a, const Point2& b);

bool encloses(const Circle& c, const Point2& p, double rel_tol = 1e-9);

/// Radius of the smallest enclosing circle. K* = 1/(n-1).
NDistance<Point2, double> radius_distance(int n);

/// Set only by the remark test: builds the area function at n = 2, which is
/// not a 2-distance.
struct AllowNonDistance {};

/// Area of the smallest enclosing circle, n >= 3. K* = 1/(n - 3/2).
NDistance<Point2, double> area_distance(int n);
NDistance<Point2, double> area_distance(int n, AllowNonDistance);

// ---------------------------------------------------------------------------
// Directions

/// Direction of a nonzero integer vector, reduced by gcd with sign
/// normalized to p > 0, or p == 0 and q > 0. Opposite vectors agree.
struct Direction {
  std::int64_t p = 0;
  std::int64_t q = 0;

  bool operator==(const Direction&) const = default;
  auto operator<=>(const Direction&) const = default;
};

/// Direction of b - a; throws ArgumentError when a == b.
Direction direction_of(const ExactPoint2& a, const ExactPoint2& b);

/// Number of distinct directions over pairs of distinct points (exact).
std::size_t direction_count(std::span<const ExactPoint2> points);

/// Floating variant: directions are compared by their angle in [0, pi)
/// with tolerance `angle_tol` radians.
std::size_t direction_count(std::span<const Point2> points, double angle_tol = 1e-9);

/// Direction-count n-distance on exact points, n >= 3.
/// K* lies in [1/(n - 2 + 2/n), 1/(n - 2)).
NDistance<ExactPoint2, Rational> direction_distance(int n);

/// Same count on floating points, bucketing by angle.
NDistance<Point2, Rational> direction_distance_float(int n);

/// n rational points on the unit circle with no two chords parallel and no
/// three points collinear (exact direction count is n(n-1)/2).
std::vector<ExactPoint2> generic_circle_points(int n);
std::vector<Point2> generic_circle_points_float(int n);

// ---------------------------------------------------------------------------

struct HomogeneityEstimate {
  /// Mean over samples of the fitted slope of log d(t x) against log t.
  double degree = 0.0;
  std::size_t samples_used = 0;
  std::vector<double> slopes;
  /// Per-sample RMS residual of the log-log fit.
  std::vector<double> residuals;
  double max_residual = 0.0;
};

/// Fits q in d(t x) = t^q d(x) on sampled tuples. Throws
/// DegenerateInputError when no sampled tuple has a positive value.
template <class V>
HomogeneityEstimate homogeneity_degree(const NDistance<Point2, V>& d, const ConfigSampler<Point2>& sampler,
                                       std::span<const double> scales, std::size_t samples,
                                       std::uint64_t seed);

}  // namespace ndist
