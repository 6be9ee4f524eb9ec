#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ndist/core.hpp"
#include "ndist/elementary.hpp"
#include "ndist/estimate.hpp"
#include "ndist/fermat.hpp"
#include "ndist/geometry_types.hpp"
#include "ndist/verify.hpp"

namespace ndist {

/// Insertion-ordered, so serialized field order is stable.
using Json = nlohmann::ordered_json;

inline Json point_json(Label l) { return static_cast<std::int64_t>(l); }
inline Json point_json(double x) { return x; }
inline Json point_json(int v) { return v; }
inline Json point_json(const Rational& r) { return to_string(r); }
inline Json point_json(const Point2& p) { return Json::array({p.x, p.y}); }
inline Json point_json(const ExactPoint2& p) { return Json::array({to_string(p.x), to_string(p.y)}); }
inline Json point_json(const VecK& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

/// Exact values as "p/q" strings, floating values as JSON numbers.
inline Json value_json(double v) { return v; }
inline Json value_json(const Rational& v) { return to_string(v); }

template <class P>
Json config_json(const Config<P>& c) {
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back(point_json(p));
  Json j;
  j["points"] = std::move(pts);
  j["pivot"] = point_json(c.pivot);
  return j;
}

/// {"exact": "p/q"}, {"interval": {"lo", "hi", "hi_exclusive"}} or null.
Json theoretical_json(const std::optional<TheoreticalK>& k);

template <class P, class V>
Json estimate_json(const EstimateReport<P, V>& r, std::int64_t elapsed_ms) {
  Json j;
  j["distance"] = r.distance_name;
  j["n"] = r.arity;
  j["seed"] = r.seed;
  j["budget"] = r.budget;
  j["best_ratio"] = value_json(r.best_ratio);
  j["witness"] = config_json(r.witness);
  j["theoretical"] = theoretical_json(r.theoretical_k);
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

template <class P, class V>
Json violation_json(const SimplexViolation<P, V>& v) {
  Json j;
  j["config"] = config_json(v.config);
  j["k"] = to_string(v.k_tested);
  j["lhs"] = value_json(v.lhs);
  j["rhs"] = value_json(v.rhs);
  j["excess"] = v.excess;
  return j;
}

std::string dump_json(const Json& j);

/// Text rendering of a value: p/q for exact values, 17 significant digits
/// otherwise.
std::string format_value(double v);
std::string format_value(const Rational& v);

/// Floating ratio shown as a small fraction when one lies within 1e-9.
std::string format_ratio(double v);
std::string format_ratio(const Rational& v);

std::string format_point(Label l);
std::string format_point(double x);
std::string format_point(int v);
std::string format_point(const Rational& r);
std::string format_point(const Point2& p);
std::string format_point(const ExactPoint2& p);
std::string format_point(const VecK& v);

template <class P>
std::string format_config(const Config<P>& c) {
  std::string s = "points";
  for (const auto& p : c.points) s += " " + format_point(p);
  return s + "; pivot " + format_point(c.pivot);
}

struct PointsFile {
  std::vector<Point2> points;
  /// Set when every literal was a decimal or p/q that parses exactly.
  std::optional<std::vector<ExactPoint2>> exact;
};

/// CSV with header `x,y`; literals are decimals or p/q. Blank lines and
/// lines starting with '#' are skipped.
PointsFile parse_points_csv(std::istream& in);
PointsFile read_points_file(const std::string& path);

/// Writes to a temporary file next to `path` and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace ndist
