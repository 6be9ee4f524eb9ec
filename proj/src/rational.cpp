#include "ndist/rational.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "ndist/core.hpp"
#include "ndist/errors.hpp"

namespace ndist {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t v = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError("invalid number literal '" + std::string(whole) + "'");
  }
  return v;
}

std::int64_t pow10(int e, std::string_view whole) {
  std::int64_t p = 1;
  for (int i = 0; i < e; ++i) {
    if (p > std::numeric_limits<std::int64_t>::max() / 10)
      throw ParseError("number literal '" + std::string(whole) + "' is too precise");
    p *= 10;
  }
  return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number literal");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_int(text.substr(0, slash), whole);
    const auto den = parse_int(text.substr(slash + 1), whole);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(whole) + "'");
    return Rational(num, den);
  }

  // Decimal: mantissa with optional fraction and exponent.
  int exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    exponent = static_cast<int>(parse_int(text.substr(e + 1), whole));
    text = text.substr(0, e);
  }
  std::string digits;
  int frac_digits = 0;
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
    frac_digits = static_cast<int>(text.size() - dot - 1);
    if (digits.empty() || digits == "-" || digits == "+") throw ParseError("invalid number literal '" + std::string(whole) + "'");
  } else {
    digits = std::string(text);
  }
  const std::int64_t mantissa = parse_int(digits, whole);
  const int scale = frac_digits - exponent;
  if (scale >= 0) return Rational(mantissa, pow10(scale, whole));
  const std::int64_t mul = pow10(-scale, whole);
  if (mantissa != 0 && std::abs(mantissa) > std::numeric_limits<std::int64_t>::max() / mul)
    throw ParseError("number literal '" + std::string(whole) + "' overflows");
  return Rational(mantissa * mul);
}

bool approximate_rational(double x, std::int64_t max_den, double tol, Rational& out) {
  if (!std::isfinite(x) || std::abs(x) > 1e15) return false;
  // Continued-fraction convergents.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double v = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_d = std::floor(v);
    if (std::abs(a_d) > 1e15) break;
    const auto a = static_cast<std::int64_t>(a_d);
    const std::int64_t h2 = a * h1 + h0;
    const std::int64_t k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= tol) {
      out = Rational(h1, k1);
      return true;
    }
    const double frac = v - a_d;
    if (frac == 0.0) break;
    v = 1.0 / frac;
  }
  return false;
}

std::string ValueTraits<double>::format(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string TheoreticalK::describe() const {
  if (is_exact()) return to_string(lo);
  return "[" + (lower_known() ? to_string(lo) : std::string("?")) + ", " + to_string(hi) +
         (hi_exclusive ? ")" : "]");
}

}  // namespace ndist
