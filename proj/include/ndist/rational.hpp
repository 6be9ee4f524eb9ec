#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace ndist {

/// Exact fraction over int64. Thin wrapper over boost::rational whose
/// comparisons take two Rationals only: integers convert first. (Mixed
/// rational/int equality in Boost 1.74 recurses forever under C++20's
/// rewritten comparison candidates.)
class Rational {
 public:
  using int_type = std::int64_t;

  Rational() = default;
  Rational(std::int64_t n) : v_(n) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d) : v_(n, d) {}

  std::int64_t numerator() const { return v_.numerator(); }
  std::int64_t denominator() const { return v_.denominator(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { v_ /= o.v_; return *this; }
  Rational operator-() const { return Rational(-v_); }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.numerator() == b.numerator() && a.denominator() == b.denominator();
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a == b) return std::strong_ordering::equal;
    return a.v_ < b.v_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  explicit Rational(boost::rational<std::int64_t> v) : v_(v) {}
  boost::rational<std::int64_t> v_;
};

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Parses "p/q", an integer, or a finite decimal literal ("0.25", "-1.5e2").
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

/// Closest fraction with denominator <= max_den, when it lies within tol of
/// x. Used to present floating ratios as exact constants.
bool approximate_rational(double x, std::int64_t max_den, double tol, Rational& out);

}  // namespace ndist
