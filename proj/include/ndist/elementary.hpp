#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ndist/core.hpp"
#include "ndist/geometry_types.hpp"

namespace ndist {

/// Element of an abstract label space.
enum class Label : std::int64_t {};

inline constexpr Label label(std::int64_t v) { return static_cast<Label>(v); }

template <class P>
using Metric = std::function<double(const P&, const P&)>;

inline double abs_diff(const double& a, const double& b) { return std::abs(a - b); }

template <class P>
std::size_t distinct_count(std::span<const P> pts) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool seen = false;
    for (std::size_t j = 0; j < i && !seen; ++j) seen = pts[j] == pts[i];
    if (!seen) ++count;
  }
  return count;
}

template <class P>
bool pairwise_distinct(std::span<const P> pts) {
  return distinct_count(pts) == pts.size();
}

namespace detail {
inline void require_arity(int n, int min_n, const std::string& what) {
  if (n < min_n) {
    throw ConfigError(what + " needs n >= " + std::to_string(min_n) + ", got " + std::to_string(n));
  }
}

/// x_1 = ... = x_{n-1} = z = a, x_n = b.
template <class P>
Config<P> all_but_last(int n, const P& a, const P& b) {
  Config<P> c;
  c.points.assign(static_cast<std::size_t>(n - 1), a);
  c.points.push_back(b);
  c.pivot = a;
  return c;
}
}  // namespace detail

/// 0 on constant tuples, 1 otherwise. K* = 1/(n-1).
template <class P>
NDistance<P, Rational> drastic(int n, const P& a, const P& b, std::string space_tag) {
  detail::require_arity(n, 2, "drastic");
  NDistance<P, Rational> d;
  d.name = "drastic";
  d.arity = n;
  d.space_tag = std::move(space_tag);
  d.eval = [](std::span<const P> x) {
    return Rational(std::all_of(x.begin(), x.end(), [&](const P& p) { return p == x.front(); }) ? 0 : 1);
  };
  d.theoretical_k = TheoreticalK::exact_value(Rational(1, n - 1));
  d.witnesses.push_back(detail::all_but_last(n, a, b));
  return d;
}

/// Number of distinct entries minus one. K* = 1/(n-1).
template <class P>
NDistance<P, Rational> cardinality(int n, const std::vector<P>& distinct, std::string space_tag) {
  detail::require_arity(n, 2, "cardinality");
  if (static_cast<int>(distinct.size()) < n) throw ArgumentError("cardinality witness needs n distinct elements");
  NDistance<P, Rational> d;
  d.name = "cardinality";
  d.arity = n;
  d.space_tag = std::move(space_tag);
  d.eval = [](std::span<const P> x) {
    return Rational(static_cast<std::int64_t>(distinct_count(x)) - 1);
  };
  d.theoretical_k = TheoreticalK::exact_value(Rational(1, n - 1));
  Config<P> w;
  w.points.assign(distinct.begin(), distinct.begin() + n);
  w.pivot = distinct.front();
  d.witnesses.push_back(std::move(w));
  return d;
}

/// Largest pairwise distance under `metric`. K* = 1/(n-1).
template <class P>
NDistance<P, double> diameter(int n, Metric<P> metric, const P& a, const P& b, std::string space_tag) {
  detail::require_arity(n, 2, "diameter");
  NDistance<P, double> d;
  d.name = "diameter";
  d.arity = n;
  d.space_tag = std::move(space_tag);
  d.eval = [metric = std::move(metric)](std::span<const P> x) {
    double best = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j) best = std::max(best, metric(x[i], x[j]));
    return best;
  };
  d.theoretical_k = TheoreticalK::exact_value(Rational(1, n - 1));
  d.witnesses.push_back(detail::all_but_last(n, a, b));
  return d;
}

/// Sum of distances over unordered pairs. K* = 1/(n-1).
template <class P>
NDistance<P, double> sum_pairwise(int n, Metric<P> metric, const P& a, const P& b, std::string space_tag) {
  detail::require_arity(n, 2, "sum");
  NDistance<P, double> d;
  d.name = "sum";
  d.arity = n;
  d.space_tag = std::move(space_tag);
  d.eval = [metric = std::move(metric)](std::span<const P> x) {
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j) total += metric(x[i], x[j]);
    return total;
  };
  d.theoretical_k = TheoreticalK::exact_value(Rational(1, n - 1));
  d.witnesses.push_back(detail::all_but_last(n, a, b));
  return d;
}

// Convenience constructors on the default spaces.
NDistance<Label, Rational> drastic(int n);
NDistance<Label, Rational> cardinality(int n);
NDistance<double, double> diameter_real(int n);
NDistance<Point2, double> diameter_plane(int n);
NDistance<double, double> sum_real(int n);
NDistance<Point2, double> sum_plane(int n);

/// Mean minus minimum on the real line. K* = 1/(n-1).
NDistance<double, double> arithmetic_mean(int n);

/// True when the sorted entries form an arithmetic progression with
/// nonzero common difference.
bool is_arithmetic_progression(std::span<const Rational> x);

/// 0 on constant tuples, 1 on arithmetic progressions, 1/n otherwise.
/// Entries are exact rationals. K* = 1.
NDistance<Rational, Rational> ap_distance(int n);

// ---------------------------------------------------------------------------
// Constructions from existing n-distances.

/// Zero on tuples with a repeated entry, d otherwise. The result is an
/// (n-1)-hemimetric, not an n-distance.
template <class P, class V>
NDistance<P, V> to_hemimetric(NDistance<P, V> d) {
  NDistance<P, V> h;
  h.name = "hemi(" + d.name + ")";
  h.arity = d.arity;
  h.space_tag = d.space_tag;
  h.eval = [inner = std::move(d.eval)](std::span<const P> x) {
    return pairwise_distinct(x) ? inner(x) : ValueTraits<V>::zero();
  };
  return h;
}

namespace detail {
template <class P, class V1, class V2>
void require_compatible(const NDistance<P, V1>& a, const NDistance<P, V2>& b) {
  if (a.arity != b.arity) {
    throw ConfigError("arity mismatch: " + a.name + " has " + std::to_string(a.arity) + ", " + b.name +
                      " has " + std::to_string(b.arity));
  }
  if (a.space_tag != b.space_tag) {
    throw ConfigError("space mismatch: " + a.name + " on " + a.space_tag + ", " + b.name + " on " +
                      b.space_tag);
  }
}
}  // namespace detail

/// Pointwise sum. If d <= K sum d_i and d' <= K' sum d'_i then the sum obeys
/// max(K, K'), which is recorded as an upper bound.
template <class P, class V>
NDistance<P, V> combine_add(const NDistance<P, V>& a, const NDistance<P, V>& b) {
  detail::require_compatible(a, b);
  NDistance<P, V> d;
  d.name = "add(" + a.name + "," + b.name + ")";
  d.arity = a.arity;
  d.space_tag = a.space_tag;
  d.eval = [fa = a.eval, fb = b.eval](std::span<const P> x) { return fa(x) + fb(x); };
  Rational hi(1);
  if (a.theoretical_k && b.theoretical_k) hi = std::max(a.theoretical_k->hi, b.theoretical_k->hi);
  d.theoretical_k = TheoreticalK::interval(Rational(0), hi);
  d.witnesses = a.witnesses;
  d.witnesses.insert(d.witnesses.end(), b.witnesses.begin(), b.witnesses.end());
  return d;
}

/// lambda * d; the ratios, hence K* and the witnesses, are unchanged.
template <class P, class V>
NDistance<P, V> scale(const NDistance<P, V>& a, const V& lambda) {
  if (!(lambda > ValueTraits<V>::zero())) throw ConfigError("scale factor must be positive");
  NDistance<P, V> d = a;
  d.name = "scale(" + a.name + "," + ValueTraits<V>::format(lambda) + ")";
  d.eval = [f = a.eval, lambda](std::span<const P> x) { return lambda * f(x); };
  return d;
}

/// d / (1 + d), with values in [0, 1). Only K* <= 1 is known in general.
template <class P, class V>
NDistance<P, V> bound(const NDistance<P, V>& a) {
  NDistance<P, V> d;
  d.name = "bound(" + a.name + ")";
  d.arity = a.arity;
  d.space_tag = a.space_tag;
  d.eval = [f = a.eval](std::span<const P> x) {
    const V v = f(x);
    return v / (V(1) + v);
  };
  d.theoretical_k = TheoreticalK::interval(Rational(0), Rational(1));
  d.witnesses = a.witnesses;
  return d;
}

}  // namespace ndist
