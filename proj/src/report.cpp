#include "ndist/report.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace ndist {

Json theoretical_json(const std::optional<TheoreticalK>& k) {
  if (!k) return nullptr;
  Json j;
  if (k->is_exact()) {
    j["exact"] = to_string(k->lo);
  } else {
    Json iv;
    iv["lo"] = to_string(k->lo);
    iv["hi"] = to_string(k->hi);
    iv["hi_exclusive"] = k->hi_exclusive;
    j["interval"] = std::move(iv);
  }
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string format_value(double v) { return ValueTraits<double>::format(v); }
std::string format_value(const Rational& v) { return to_string(v); }

std::string format_ratio(double v) {
  Rational r;
  if (approximate_rational(v, 1000000, 1e-9, r)) return to_string(r);
  return format_value(v);
}

std::string format_ratio(const Rational& v) { return to_string(v); }

std::string format_point(Label l) { return std::to_string(static_cast<std::int64_t>(l)); }
std::string format_point(double x) { return format_value(x); }
std::string format_point(int v) { return std::to_string(v); }
std::string format_point(const Rational& r) { return to_string(r); }
std::string format_point(const Point2& p) { return "(" + format_value(p.x) + ", " + format_value(p.y) + ")"; }
std::string format_point(const ExactPoint2& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }
std::string format_point(const VecK& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_value(v(i));
  return s + ")";
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

PointsFile parse_points_csv(std::istream& in) {
  PointsFile out;
  std::vector<ExactPoint2> exact;
  bool all_exact = true;
  bool header_seen = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos) {
      throw ParseError("points line " + std::to_string(line_no) + ": expected two comma-separated fields");
    }
    const std::string fx = trim(t.substr(0, comma));
    const std::string fy = trim(t.substr(comma + 1));
    if (!header_seen) {
      if (fx != "x" || fy != "y") throw ParseError("points file must start with the header 'x,y'");
      header_seen = true;
      continue;
    }
    double coords[2];
    Rational exact_coords[2];
    const std::string* fields[2] = {&fx, &fy};
    for (int k = 0; k < 2; ++k) {
      try {
        exact_coords[k] = parse_rational(*fields[k]);
        coords[k] = to_double(exact_coords[k]);
      } catch (const ParseError&) {
        // Not representable exactly (too many digits): plain decimal only.
        char* end = nullptr;
        errno = 0;
        coords[k] = std::strtod(fields[k]->c_str(), &end);
        if (fields[k]->empty() || end != fields[k]->c_str() + fields[k]->size() || errno == ERANGE ||
            !std::isfinite(coords[k])) {
          throw ParseError("points line " + std::to_string(line_no) + ": invalid coordinate '" + *fields[k] + "'");
        }
        all_exact = false;
      }
    }
    out.points.push_back({coords[0], coords[1]});
    if (all_exact) exact.push_back({exact_coords[0], exact_coords[1]});
  }
  if (!header_seen) throw ParseError("points file is empty (expected header 'x,y')");
  if (out.points.empty()) throw ParseError("points file has no points");
  if (all_exact) out.exact = std::move(exact);
  return out;
}

PointsFile read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open points file '" + path + "'");
  return parse_points_csv(in);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ArgumentError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw ArgumentError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ArgumentError("cannot move report into '" + path + "': " + ec.message());
  }
}

}  // namespace ndist
