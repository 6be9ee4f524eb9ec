#include "ndist/registry.hpp"

#include <algorithm>
#include <random>

namespace ndist {

// ---------------------------------------------------------------------------
// Spaces

Space<Label> label_space(int universe) {
  if (universe < 2) throw ConfigError("label universe needs at least 2 labels");
  Space<Label> s;
  s.tag = "labels";
  s.sample = [universe](Rng& rng) { return label(std::uniform_int_distribution<int>(0, universe - 1)(rng)); };
  s.perturb = [universe](const Label&, double, Rng& rng) {
    return label(std::uniform_int_distribution<int>(0, universe - 1)(rng));
  };
  return s;
}

Space<double> real_space() {
  Space<double> s;
  s.tag = "real";
  s.sample = [](Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };
  s.perturb = [](const double& x, double step, Rng& rng) { return x + std::normal_distribution<double>(0.0, step)(rng); };
  return s;
}

Space<Point2> plane_space() {
  Space<Point2> s;
  s.tag = "plane";
  s.sample = [](Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double x = u(rng);
    return Point2{x, u(rng)};
  };
  s.perturb = [](const Point2& p, double step, Rng& rng) {
    std::normal_distribution<double> g(0.0, step);
    const double dx = g(rng);
    return Point2{p.x + dx, p.y + g(rng)};
  };
  return s;
}

Space<Rational> integer_rational_space(int lo, int hi) {
  Space<Rational> s;
  s.tag = "rational";
  s.sample = [lo, hi](Rng& rng) { return Rational(std::uniform_int_distribution<int>(lo, hi)(rng)); };
  s.perturb = [](const Rational& x, double, Rng& rng) {
    static constexpr int kMoves[] = {-2, -1, 1, 2};
    return x + Rational(kMoves[std::uniform_int_distribution<int>(0, 3)(rng)]);
  };
  s.initial_step = 1.0;
  return s;
}

Space<ExactPoint2> lattice_space(int lo, int hi) {
  Space<ExactPoint2> s;
  s.tag = "lattice";
  s.sample = [lo, hi](Rng& rng) {
    std::uniform_int_distribution<int> u(lo, hi);
    const int x = u(rng);
    return ExactPoint2{Rational(x), Rational(u(rng))};
  };
  s.perturb = [](const ExactPoint2& p, double, Rng& rng) {
    std::uniform_int_distribution<int> u(-1, 1);
    int dx = 0, dy = 0;
    while (dx == 0 && dy == 0) {
      dx = u(rng);
      dy = u(rng);
    }
    return ExactPoint2{p.x + dx, p.y + dy};
  };
  s.initial_step = 1.0;
  return s;
}

Space<VecK> cube_space(int dim) {
  if (dim < 1) throw ConfigError("dimension must be at least 1");
  Space<VecK> s;
  s.tag = "R" + std::to_string(dim);
  s.sample = [dim](Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    VecK v(dim);
    for (int i = 0; i < dim; ++i) v(i) = u(rng);
    return v;
  };
  s.perturb = [](const VecK& p, double step, Rng& rng) {
    std::normal_distribution<double> g(0.0, step);
    VecK v = p;
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) += g(rng);
    return v;
  };
  return s;
}

Space<Vertex> vertex_space(std::shared_ptr<const Graph> g) {
  if (!g) throw ConfigError("vertex space needs a graph");
  Space<Vertex> s;
  s.tag = "vertices";
  s.sample = [g](Rng& rng) { return std::uniform_int_distribution<Vertex>(0, g->vertex_count() - 1)(rng); };
  s.perturb = [g](const Vertex& v, double, Rng& rng) {
    const auto& nb = g->neighbors(v);
    if (nb.empty()) return v;
    return nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)];
  };
  s.initial_step = 1.0;
  return s;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& registered_names() {
  static const std::vector<std::string> names{"drastic",          "cardinality",   "diameter",   "sum",
                                              "arithmetic_mean",  "ap",            "sec_radius", "sec_area",
                                              "directions",       "fermat_euclidean", "fermat_graph3"};
  return names;
}

int min_arity(const std::string& base) {
  if (base == "ap" || base == "sec_area" || base == "directions" || base == "fermat_graph3") return 3;
  return 2;
}

namespace {

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

struct Call {
  std::string head;
  std::vector<std::string> args;
  bool is_call = false;
};

Call parse_call(const std::string& text) {
  Call c;
  const std::string s = trim(text);
  const auto open = s.find('(');
  if (open == std::string::npos) {
    c.head = s;
    return c;
  }
  if (s.back() != ')') throw ConfigError("malformed distance name '" + s + "'");
  c.head = trim(s.substr(0, open));
  c.is_call = true;
  int depth = 0;
  std::string cur;
  for (std::size_t i = open + 1; i + 1 < s.size(); ++i) {
    const char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')' && --depth < 0) throw ConfigError("unbalanced parentheses in '" + s + "'");
    if (ch == ',' && depth == 0) {
      c.args.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw ConfigError("unbalanced parentheses in '" + s + "'");
  c.args.push_back(trim(cur));
  return c;
}

void require_space(const std::string& name, const DistanceParams& p, std::initializer_list<const char*> allowed) {
  if (p.space.empty()) return;
  for (const char* a : allowed)
    if (p.space == a) return;
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw ConfigError(name + " is not defined on space '" + p.space + "' (allowed: " + list + ")");
}

template <class P, class V>
AnyDistance reg(NDistance<P, V> d, Space<P> s) {
  return Registered<P, V>{std::move(d), std::move(s)};
}

AnyDistance make_base(const std::string& name, int n, const DistanceParams& p) {
  const std::string& sp = p.space;
  if (name == "drastic" || name == "cardinality") {
    require_space(name, p, {"labels"});
    return reg(name == "drastic" ? drastic(n) : cardinality(n), label_space());
  }
  if (name == "diameter" || name == "sum") {
    require_space(name, p, {"real", "plane"});
    if (sp == "plane") return reg(name == "diameter" ? diameter_plane(n) : sum_plane(n), plane_space());
    return reg(name == "diameter" ? diameter_real(n) : sum_real(n), real_space());
  }
  if (name == "arithmetic_mean") {
    require_space(name, p, {"real"});
    return reg(arithmetic_mean(n), real_space());
  }
  if (name == "ap") {
    require_space(name, p, {"rational"});
    return reg(ap_distance(n), integer_rational_space());
  }
  if (name == "sec_radius") {
    require_space(name, p, {"plane"});
    return reg(radius_distance(n), plane_space());
  }
  if (name == "sec_area") {
    require_space(name, p, {"plane"});
    return reg(area_distance(n), plane_space());
  }
  if (name == "directions") {
    require_space(name, p, {"lattice", "plane"});
    if (sp == "plane") return reg(direction_distance_float(n), plane_space());
    return reg(direction_distance(n), lattice_space());
  }
  if (name == "fermat_euclidean") {
    require_space(name, p, {"plane", "rk"});
    const int k = sp == "rk" ? p.dim : 2;
    return reg(fermat_distance_euclidean(n, k), cube_space(k));
  }
  if (name == "fermat_graph3") {
    require_space(name, p, {"vertices"});
    if (n != 3) throw ConfigError("fermat_graph3 is a 3-distance, got n = " + std::to_string(n));
    auto g = p.graph ? p.graph : std::make_shared<const Graph>(grid_graph(3, 3));
    return reg(fermat3_graph_distance(*g), vertex_space(g));
  }
  throw ConfigError("unknown distance '" + name + "'");
}

}  // namespace

AnyDistance make_distance(const std::string& name, int n, const DistanceParams& params) {
  const Call c = parse_call(name);
  if (!c.is_call) return make_base(c.head, n, params);

  auto expect_args = [&](std::size_t k) {
    if (c.args.size() != k) {
      throw ConfigError(c.head + " takes " + std::to_string(k) + " argument(s), got " + std::to_string(c.args.size()));
    }
  };
  if (c.head == "add") {
    expect_args(2);
    AnyDistance a = make_distance(c.args[0], n, params);
    const AnyDistance b = make_distance(c.args[1], n, params);
    if (a.index() != b.index()) throw ConfigError("add: " + c.args[0] + " and " + c.args[1] + " live on different spaces");
    return std::visit(
        [&](auto& ra) -> AnyDistance {
          using R = std::decay_t<decltype(ra)>;
          const auto& rb = std::get<R>(b);
          return R{combine_add(ra.distance, rb.distance), ra.space};
        },
        a);
  }
  if (c.head == "scale") {
    expect_args(2);
    Rational lambda;
    try {
      lambda = parse_rational(c.args[1]);
    } catch (const ParseError& e) {
      throw ConfigError(std::string("scale: ") + e.what());
    }
    AnyDistance a = make_distance(c.args[0], n, params);
    return std::visit(
        [&](auto& ra) -> AnyDistance {
          using R = std::decay_t<decltype(ra)>;
          using V = typename decltype(ra.distance)::value_type;
          return R{scale(ra.distance, ValueTraits<V>::from_rational(lambda)), ra.space};
        },
        a);
  }
  if (c.head == "bound" || c.head == "hemi") {
    expect_args(1);
    AnyDistance a = make_distance(c.args[0], n, params);
    const bool is_bound = c.head == "bound";
    return std::visit(
        [&](auto& ra) -> AnyDistance {
          using R = std::decay_t<decltype(ra)>;
          return R{is_bound ? bound(ra.distance) : to_hemimetric(ra.distance), ra.space};
        },
        a);
  }
  throw ConfigError("unknown combinator '" + c.head + "'");
}

}  // namespace ndist
