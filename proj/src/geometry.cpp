#include "ndist/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "ndist/elementary.hpp"
#include "ndist/random.hpp"

namespace ndist {

namespace {

double sq(double v) { return v * v; }

double dist2(const Point2& a, const Point2& b) { return sq(a.x - b.x) + sq(a.y - b.y); }

// Containment used inside the incremental construction: relative slack of
// 1e-12 on the squared radius plus an absolute floor tied to the data scale.
bool inside(const Circle& c, const Point2& p, double abs_floor) {
  return dist2(c.center, p) <= sq(c.radius) * (1.0 + 2e-12) + abs_floor;
}

Circle with_radius_from_support(Point2 center, std::vector<Point2> support) {
  double r2 = 0.0;
  for (const auto& s : support) r2 = std::max(r2, dist2(center, s));
  return {center, std::sqrt(r2), std::move(support)};
}

}  // namespace

Circle diametral_circle(const Point2& a, const Point2& b) {
  return with_radius_from_support({0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}, {a, b});
}

Circle circumcircle(const Point2& a, const Point2& b, const Point2& c) {
  const Point2 u = a - c;
  const Point2 v = b - c;
  const double den = 2.0 * (u.x * v.y - u.y * v.x);
  const double uu = u.x * u.x + u.y * u.y;
  const double vv = v.x * v.x + v.y * v.y;
  if (std::abs(den) <= 1e-14 * std::sqrt(uu * vv) || den == 0.0) {
    // Collinear: the widest pair spans the circle.
    const double ab = dist2(a, b), ac = dist2(a, c), bc = dist2(b, c);
    if (ab >= ac && ab >= bc) return diametral_circle(a, b);
    if (ac >= bc) return diametral_circle(a, c);
    return diametral_circle(b, c);
  }
  const Point2 center{c.x + (v.y * uu - u.y * vv) / den, c.y + (u.x * vv - v.x * uu) / den};
  return with_radius_from_support(center, {a, b, c});
}

bool encloses(const Circle& c, const Point2& p, double rel_tol) {
  return std::sqrt(dist2(c.center, p)) <= c.radius + rel_tol * std::max(1.0, c.radius);
}

Circle smallest_enclosing_circle(std::span<const Point2> points, std::uint64_t seed) {
  if (points.empty()) throw ArgumentError("smallest_enclosing_circle needs at least one point");
  double scale = 0.0;
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw ArgumentError("non-finite point coordinate");
    scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  }
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Rng rng = stream_rng(seed, pts.size());
  std::shuffle(pts.begin(), pts.end(), rng);

  const double floor = sq(1e-15 * std::max(1.0, scale));
  Circle c{pts[0], 0.0, {pts[0]}};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (inside(c, pts[i], floor)) continue;
    c = Circle{pts[i], 0.0, {pts[i]}};
    for (std::size_t j = 0; j < i; ++j) {
      if (inside(c, pts[j], floor)) continue;
      c = diametral_circle(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (inside(c, pts[k], floor)) continue;
        c = circumcircle(pts[i], pts[j], pts[k]);
      }
    }
  }
  return c;
}

NDistance<Point2, double> radius_distance(int n) {
  detail::require_arity(n, 2, "sec_radius");
  NDistance<Point2, double> d;
  d.name = "sec_radius";
  d.arity = n;
  d.space_tag = "plane";
  d.eval = [](std::span<const Point2> x) { return smallest_enclosing_circle(x).radius; };
  d.theoretical_k = TheoreticalK::exact_value(Rational(1, n - 1));
  // A_2 = ... = A_n = Z, A_1 != A_2
  Config<Point2> w;
  w.points.assign(static_cast<std::size_t>(n), Point2{0, 0});
  w.points[0] = Point2{1, 0};
  w.pivot = Point2{0, 0};
  d.witnesses.push_back(std::move(w));
  return d;
}

namespace {
NDistance<Point2, double> make_area(int n) {
  NDistance<Point2, double> d;
  d.name = "sec_area";
  d.arity = n;
  d.space_tag = "plane";
  d.eval = [](std::span<const Point2> x) {
    const double r = smallest_enclosing_circle(x).radius;
    return std::numbers::pi * r * r;
  };
  return d;
}
}  // namespace

NDistance<Point2, double> area_distance(int n) {
  detail::require_arity(n, 3, "sec_area");
  auto d = make_area(n);
  d.theoretical_k = TheoreticalK::exact_value(Rational(2, 2 * n - 3));
  // A_1 != A_2, A_3 = ... = A_n = Z = midpoint
  Config<Point2> w;
  w.points.assign(static_cast<std::size_t>(n), Point2{1, 0});
  w.points[0] = Point2{0, 0};
  w.points[1] = Point2{2, 0};
  w.pivot = Point2{1, 0};
  d.witnesses.push_back(std::move(w));
  return d;
}

NDistance<Point2, double> area_distance(int n, AllowNonDistance) {
  detail::require_arity(n, 2, "sec_area");
  return n >= 3 ? area_distance(n) : make_area(n);
}

// ---------------------------------------------------------------------------

Direction direction_of(const ExactPoint2& a, const ExactPoint2& b) {
  const Rational dx = b.x - a.x;
  const Rational dy = b.y - a.y;
  if (dx == 0 && dy == 0) throw ArgumentError("direction of coincident points");
  const std::int64_t l = std::lcm(dx.denominator(), dy.denominator());
  std::int64_t p = dx.numerator() * (l / dx.denominator());
  std::int64_t q = dy.numerator() * (l / dy.denominator());
  const std::int64_t g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (p < 0 || (p == 0 && q < 0)) {
    p = -p;
    q = -q;
  }
  return {p, q};
}

std::size_t direction_count(std::span<const ExactPoint2> points) {
  std::vector<Direction> dirs;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (!(points[i] == points[j])) dirs.push_back(direction_of(points[i], points[j]));
  std::sort(dirs.begin(), dirs.end());
  return static_cast<std::size_t>(std::unique(dirs.begin(), dirs.end()) - dirs.begin());
}

std::size_t direction_count(std::span<const Point2> points, double angle_tol) {
  std::vector<double> angles;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) continue;
      double a = std::atan2(points[j].y - points[i].y, points[j].x - points[i].x);
      if (a < 0) a += std::numbers::pi;
      if (a >= std::numbers::pi) a -= std::numbers::pi;
      angles.push_back(a);
    }
  }
  if (angles.empty()) return 0;
  std::sort(angles.begin(), angles.end());
  std::size_t count = 1;
  for (std::size_t k = 1; k < angles.size(); ++k)
    if (angles[k] - angles[k - 1] > angle_tol) ++count;
  // 0 and pi are the same direction.
  if (count > 1 && angles.front() + std::numbers::pi - angles.back() <= angle_tol) --count;
  return count;
}

std::vector<ExactPoint2> generic_circle_points(int n) {
  // Rational parametrization t -> ((1 - t^2) / (1 + t^2), 2t / (1 + t^2)),
  // t scanned over small fractions; keep a point when it adds no parallel
  // chord and no collinear triple.
  std::vector<ExactPoint2> pts;
  const auto target = [](std::size_t m) { return m * (m - 1) / 2; };
  for (std::int64_t den = 2; static_cast<int>(pts.size()) < n; ++den) {
    for (std::int64_t num = 1; num < 3 * den && static_cast<int>(pts.size()) < n; ++num) {
      if (std::gcd(num, den) != 1) continue;
      const Rational t(num, den);
      const Rational one(1);
      const ExactPoint2 p{(one - t * t) / (one + t * t), Rational(2) * t / (one + t * t)};
      pts.push_back(p);
      if (direction_count(std::span<const ExactPoint2>(pts)) != target(pts.size())) pts.pop_back();
    }
  }
  return pts;
}

std::vector<Point2> generic_circle_points_float(int n) {
  std::vector<Point2> pts;
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int k = 0; static_cast<int>(pts.size()) < n; ++k) {
    const double frac = std::fmod(0.1 + k * golden, 1.0);
    const double theta = 2.0 * std::numbers::pi * frac;
    pts.push_back({std::cos(theta), std::sin(theta)});
    const auto m = pts.size();
    if (direction_count(std::span<const Point2>(pts), 1e-6) != m * (m - 1) / 2) pts.pop_back();
  }
  return pts;
}

namespace {
template <class P>
Config<P> circle_witness(std::vector<P> pts) {
  Config<P> w;
  w.pivot = pts.front();
  w.points = std::move(pts);
  return w;
}

TheoreticalK direction_bounds(int n) {
  // 1/(n - 2 + 2/n) = n / (n^2 - 2n + 2)
  return TheoreticalK::interval(Rational(n, n * n - 2 * n + 2), Rational(1, n - 2), true);
}
}  // namespace

NDistance<ExactPoint2, Rational> direction_distance(int n) {
  detail::require_arity(n, 3, "directions");
  NDistance<ExactPoint2, Rational> d;
  d.name = "directions";
  d.arity = n;
  d.space_tag = "exact_plane";
  d.eval = [](std::span<const ExactPoint2> x) {
    return Rational(static_cast<std::int64_t>(direction_count(x)));
  };
  d.theoretical_k = direction_bounds(n);
  d.witnesses.push_back(circle_witness(generic_circle_points(n)));
  return d;
}

NDistance<Point2, Rational> direction_distance_float(int n) {
  detail::require_arity(n, 3, "directions");
  NDistance<Point2, Rational> d;
  d.name = "directions_float";
  d.arity = n;
  d.space_tag = "plane";
  d.eval = [](std::span<const Point2> x) {
    return Rational(static_cast<std::int64_t>(direction_count(x)));
  };
  d.theoretical_k = direction_bounds(n);
  d.witnesses.push_back(circle_witness(generic_circle_points_float(n)));
  return d;
}

// ---------------------------------------------------------------------------

template <class V>
HomogeneityEstimate homogeneity_degree(const NDistance<Point2, V>& d, const ConfigSampler<Point2>& sampler,
                                       std::span<const double> scales, std::size_t samples,
                                       std::uint64_t seed) {
  for (double t : scales)
    if (!(t > 0)) throw ArgumentError("homogeneity scales must be positive");
  if (scales.empty()) throw ArgumentError("homogeneity needs at least one scale");

  HomogeneityEstimate est;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = stream_rng(seed, s, kSampleDomain);
    const auto cfg = sampler(rng);
    std::vector<double> xs{0.0}, ys;
    const double base = ValueTraits<V>::to_double(d.eval(cfg.points));
    if (!(base > 0)) continue;
    ys.push_back(std::log(base));
    bool usable = true;
    for (double t : scales) {
      std::vector<Point2> scaled;
      for (const auto& p : cfg.points) scaled.push_back(t * p);
      const double v = ValueTraits<V>::to_double(d.eval(scaled));
      if (!(v > 0)) {
        usable = false;
        break;
      }
      xs.push_back(std::log(t));
      ys.push_back(std::log(v));
    }
    if (!usable) continue;
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      sxy += (xs[k] - mx) * (ys[k] - my);
      sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    if (sxx == 0.0) throw ArgumentError("homogeneity scales must include some t != 1");
    const double slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) rss += sq(ys[k] - (my + slope * (xs[k] - mx)));
    const double rms = std::sqrt(rss / static_cast<double>(xs.size()));
    est.slopes.push_back(slope);
    est.residuals.push_back(rms);
    est.max_residual = std::max(est.max_residual, rms);
  }
  if (est.slopes.empty()) throw DegenerateInputError(d.name + ": every sampled value is zero");
  est.samples_used = est.slopes.size();
  est.degree = std::accumulate(est.slopes.begin(), est.slopes.end(), 0.0) /
               static_cast<double>(est.slopes.size());
  return est;
}

template HomogeneityEstimate homogeneity_degree(const NDistance<Point2, double>&, const ConfigSampler<Point2>&,
                                                std::span<const double>, std::size_t, std::uint64_t);
template HomogeneityEstimate homogeneity_degree(const NDistance<Point2, Rational>&,
                                                const ConfigSampler<Point2>&, std::span<const double>,
                                                std::size_t, std::uint64_t);

}  // namespace ndist
