#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ndist/errors.hpp"
#include "ndist/rational.hpp"

namespace ndist {

/// Tolerance used for floating-valued distances.
inline constexpr double kFloatTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Value types. Integer/rational valued distances are evaluated exactly with
// Rational; the rest use double.

template <class V>
struct ValueTraits;

template <>
struct ValueTraits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double to_double(double v) { return v; }
  static std::string format(double v);
  static bool finite_nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }
  /// a > b beyond tolerance (relative to magnitude).
  static bool greater(double a, double b) {
    return a - b > kFloatTolerance * std::max(1.0, std::abs(b));
  }
  static bool is_zero(double v) { return v == 0.0; }
  static double from_rational(const Rational& r) { return ndist::to_double(r); }
};

template <>
struct ValueTraits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static double to_double(const Rational& v) { return ndist::to_double(v); }
  static std::string format(const Rational& v) { return to_string(v); }
  static bool finite_nonnegative(const Rational& v) { return v >= 0; }
  static bool greater(const Rational& a, const Rational& b) { return a > b; }
  static bool is_zero(const Rational& v) { return v == 0; }
  static Rational from_rational(const Rational& r) { return r; }
};

// ---------------------------------------------------------------------------

/// Known value of the best constant: exact when lo == hi, otherwise the
/// interval [lo, hi] (or [lo, hi) when the upper end is not attained).
/// An unknown lower end is stored as lo = 0.
struct TheoreticalK {
  Rational lo{0};
  Rational hi{1};
  bool hi_exclusive = false;

  static TheoreticalK exact_value(Rational k) { return {k, k, false}; }
  static TheoreticalK interval(Rational lo, Rational hi, bool hi_exclusive = false) {
    return {lo, hi, hi_exclusive};
  }
  bool is_exact() const { return lo == hi && !hi_exclusive; }
  bool lower_known() const { return lo > 0; }
  std::string describe() const;
};

/// One instance of the simplex inequality: x_1..x_n and a pivot z.
template <class P>
struct Config {
  std::vector<P> points;
  P pivot{};

  bool operator==(const Config&) const = default;
};

/// Symmetric nonnegative function of n points of some space.
template <class P, class V = double>
struct NDistance {
  using point_type = P;
  using value_type = V;
  using Eval = std::function<V(std::span<const P>)>;

  std::string name;
  int arity = 2;
  std::string space_tag;
  Eval eval;
  std::optional<TheoreticalK> theoretical_k;
  /// Extremal configurations from the closed-form arguments; the estimator
  /// always evaluates these before searching.
  std::vector<Config<P>> witnesses;

  V operator()(std::span<const P> pts) const { return eval(pts); }
};

template <class P, class V>
struct RatioSample {
  Config<P> config;
  V numerator{};
  V denominator{};
  V ratio{};
};

template <class P>
void require_valid_config(int arity, const Config<P>& c) {
  if (static_cast<int>(c.points.size()) != arity) {
    throw ArgumentError("config has " + std::to_string(c.points.size()) +
                        " points, distance arity is " + std::to_string(arity));
  }
}

/// d applied to the tuple with x_i replaced by the pivot (0-based i).
template <class P, class V>
V eval_replaced(const NDistance<P, V>& d, const Config<P>& c, std::size_t i) {
  require_valid_config(d.arity, c);
  if (i >= c.points.size()) {
    throw ArgumentError("replacement index " + std::to_string(i) + " out of range [0, " +
                        std::to_string(c.points.size()) + ")");
  }
  std::vector<P> replaced = c.points;
  replaced[i] = c.pivot;
  return d.eval(replaced);
}

/// numerator = d(x), denominator = sum_i d(x)_i^z, ratio with 0/0 := 0.
/// A positive numerator over a vanishing denominator is an AxiomViolation.
template <class P, class V>
RatioSample<P, V> simplex_ratio(const NDistance<P, V>& d, const Config<P>& c) {
  using T = ValueTraits<V>;
  require_valid_config(d.arity, c);
  RatioSample<P, V> s;
  s.config = c;
  s.numerator = d.eval(c.points);
  s.denominator = T::zero();
  std::vector<P> replaced = c.points;
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    replaced[i] = c.pivot;
    s.denominator += d.eval(replaced);
    replaced[i] = c.points[i];
  }
  if constexpr (T::exact) {
    if (s.numerator == 0) {
      s.ratio = T::zero();
    } else if (s.denominator == 0) {
      throw AxiomViolation(d.name + ": positive value " + T::format(s.numerator) +
                           " with zero simplex sum");
    } else {
      s.ratio = s.numerator / s.denominator;
    }
  } else {
    if (s.numerator == 0.0) {
      s.ratio = 0.0;
    } else if (s.denominator <= kFloatTolerance && s.numerator > kFloatTolerance) {
      throw AxiomViolation(d.name + ": positive value " + T::format(s.numerator) +
                           " with vanishing simplex sum " + T::format(s.denominator));
    } else {
      s.ratio = s.denominator > 0.0 ? s.numerator / s.denominator : 0.0;
    }
  }
  return s;
}

}  // namespace ndist
