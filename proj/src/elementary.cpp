#include "ndist/elementary.hpp"

#include <algorithm>
#include <vector>

namespace ndist {

NDistance<Label, Rational> drastic(int n) { return drastic<Label>(n, label(0), label(1), "labels"); }

NDistance<Label, Rational> cardinality(int n) {
  std::vector<Label> distinct;
  for (int i = 0; i < std::max(n, 2); ++i) distinct.push_back(label(i));
  return cardinality<Label>(n, distinct, "labels");
}

NDistance<double, double> diameter_real(int n) {
  return diameter<double>(n, abs_diff, 0.0, 1.0, "real");
}

NDistance<Point2, double> diameter_plane(int n) {
  return diameter<Point2>(n, euclidean, Point2{0, 0}, Point2{1, 0}, "plane");
}

NDistance<double, double> sum_real(int n) {
  return sum_pairwise<double>(n, abs_diff, 0.0, 1.0, "real");
}

NDistance<Point2, double> sum_plane(int n) {
  return sum_pairwise<Point2>(n, euclidean, Point2{0, 0}, Point2{1, 0}, "plane");
}

NDistance<double, double> arithmetic_mean(int n) {
  detail::require_arity(n, 2, "arithmetic_mean");
  NDistance<double, double> d;
  d.name = "arithmetic_mean";
  d.arity = n;
  d.space_tag = "real";
  // Written as the mean of (x_i - min) so constant tuples give exactly 0.
  d.eval = [](std::span<const double> x) {
    const double lo = *std::min_element(x.begin(), x.end());
    double total = 0.0;
    for (double v : x) total += v - lo;
    return total / static_cast<double>(x.size());
  };
  d.theoretical_k = TheoreticalK::exact_value(Rational(1, n - 1));
  // x_1 < z < x_2 = ... = x_n
  Config<double> w;
  w.points.assign(static_cast<std::size_t>(n), 2.0);
  w.points[0] = 0.0;
  w.pivot = 1.0;
  d.witnesses.push_back(std::move(w));
  return d;
}

bool is_arithmetic_progression(std::span<const Rational> x) {
  if (x.size() < 2) return false;
  std::vector<Rational> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const Rational step = sorted[1] - sorted[0];
  if (step == 0) return false;
  for (std::size_t i = 2; i < sorted.size(); ++i)
    if (sorted[i] - sorted[i - 1] != step) return false;
  return true;
}

NDistance<Rational, Rational> ap_distance(int n) {
  detail::require_arity(n, 3, "ap");
  NDistance<Rational, Rational> d;
  d.name = "ap";
  d.arity = n;
  d.space_tag = "rational";
  d.eval = [](std::span<const Rational> x) {
    if (std::all_of(x.begin(), x.end(), [&](const Rational& v) { return v == x.front(); })) return Rational(0);
    if (is_arithmetic_progression(x)) return Rational(1);
    return Rational(1, static_cast<std::int64_t>(x.size()));
  };
  d.theoretical_k = TheoreticalK::exact_value(Rational(1));
  // x = (1, ..., n). For n >= 4 the pivot -1 breaks every replaced tuple's
  // progression; for n = 3 it completes (-1, 1, 3), so a far pivot is used.
  Config<Rational> w;
  for (int i = 1; i <= n; ++i) w.points.emplace_back(i);
  w.pivot = n >= 4 ? Rational(-1) : Rational(10);
  d.witnesses.push_back(std::move(w));
  return d;
}

}  // namespace ndist
