// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ndist/cli.hpp"
#include "ndist/gdistance.hpp"
#include "ndist/registry.hpp"
#include "ndist/verify.hpp"
#include "oracles.hpp"

using namespace ndist;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    if (line.back() == ',') cols.emplace_back();
    rows.push_back(std::move(cols));
  }
  return rows;
}

bool is_exact_text(const std::string& s) { return s.find_first_of(".eE") == std::string::npos; }

// ---------------------------------------------------------------------------

Outcome table_constants() {
  Outcome o;
  const auto t0 = Clock::now();
  auto run_table = [&](const std::string& distances, int lo, int hi) {
    std::ostringstream out, err;
    const int code = run_cli({"table", "--n-min", std::to_string(lo), "--n-max", std::to_string(hi), "--budget",
                              "10000", "--seed", "1", "--distances", distances},
                             out, err);
    if (code != 0) o.fail("table exited " + std::to_string(code) + ": " + err.str());
    return parse_csv(out.str());
  };
  auto rows = run_table("drastic,cardinality,diameter,sum,arithmetic_mean,sec_radius,sec_area", 2, 6);
  for (auto& r : run_table("ap", 4, 6)) rows.push_back(r);

  std::map<std::string, int> seen;
  for (const auto& r : rows) {
    if (r.size() != 7) {
      o.fail("malformed row");
      continue;
    }
    const std::string& name = r[0];
    const int n = std::stoi(r[1]);
    ++seen[name];
    Rational expected;
    if (name == "sec_area")
      expected = Rational(2, 2 * n - 3);
    else if (name == "ap")
      expected = Rational(1);
    else
      expected = Rational(1, n - 1);
    const std::string& est = r[4];
    const bool good = is_exact_text(est) ? parse_rational(est) == expected
                                         : std::abs(std::stod(est) - to_double(expected)) <= 1e-9;
    if (!good) o.fail(name + " n=" + r[1] + ": estimated " + est + ", expected " + to_string(expected));
  }
  for (const char* name : {"drastic", "cardinality", "diameter", "sum", "arithmetic_mean", "sec_radius"})
    if (seen[name] != 5) o.fail(std::string(name) + ": expected 5 rows");
  if (seen["sec_area"] != 4 || seen["ap"] != 3) o.fail("sec_area/ap row count");
  const double secs = seconds_since(t0);
  if (secs >= 60) o.fail("took " + std::to_string(secs) + " s");
  if (o.ok) o.detail = std::to_string(rows.size()) + " rows match";
  return o;
}

Outcome simplex_fuzz() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t configs = 0;
  for (const auto& name : registered_names()) {
    const int lo = min_arity(name);
    const int hi = name == "fermat_graph3" ? 3 : 6;
    for (int n = lo; n <= hi; ++n) {
      std::visit(
          [&](const auto& reg) {
            const auto& d = reg.distance;
            if (!d.theoretical_k) {
              o.fail(name + ": no theoretical constant");
              return;
            }
            const auto& k = *d.theoretical_k;
            const auto found = verify_simplex(d, k.hi, config_sampler(reg.space, n), 100000, 2024, d.witnesses,
                                              k.hi_exclusive);
            configs += 100000;
            if (!found.empty())
              o.fail(name + " n=" + std::to_string(n) + ": " + std::to_string(found.size()) + " violations");
          },
          make_distance(name, n));
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 300) o.fail("took " + std::to_string(secs) + " s");
  if (o.ok) o.detail = std::to_string(configs) + " configs, 0 violations";
  return o;
}

Outcome fermat_sandwich() {
  Outcome o;
  for (int n = 3; n <= 6; ++n) {
    const double upper = (4.0 * n - 4) / (3.0 * n * n - 4.0 * n);
    const double lower = 1.0 / (n - 1);
    const auto d = fermat_distance_euclidean(n, 2);
    const auto sampler = config_sampler(cube_space(2), n);
    double max_ratio = 0, min_at_fermat = 1e300;
    for (std::size_t i = 0; i < 10000; ++i) {
      Rng rng = stream_rng(33, i);
      Config<VecK> c = sampler(rng);
      if (detail::is_constant(c.points)) continue;
      max_ratio = std::max(max_ratio, simplex_ratio(d, c).ratio);
      c.pivot = weiszfeld(c.points).minimizer;
      min_at_fermat = std::min(min_at_fermat, simplex_ratio(d, c).ratio);
    }
    if (max_ratio > upper + 1e-7) o.fail("n=" + std::to_string(n) + " ratio " + std::to_string(max_ratio));
    if (min_at_fermat < lower - 1e-7)
      o.fail("n=" + std::to_string(n) + " Fermat pivot ratio " + std::to_string(min_at_fermat));
  }
  if (o.ok) o.detail = "n = 3..6, 10^4 configs each";
  return o;
}

Outcome median_graphs() {
  Outcome o;
  const auto t0 = Clock::now();
  std::vector<std::pair<std::string, Graph>> graphs;
  std::mt19937_64 pick(5);
  for (int i = 0; i < 50; ++i) {
    const int size = 2 + static_cast<int>(pick() % 19);
    graphs.emplace_back("tree" + std::to_string(i), random_tree(size, 1000 + i));
  }
  graphs.emplace_back("grid3x3", grid_graph(3, 3));
  graphs.emplace_back("Q3", hypercube_graph(3));

  for (const auto& [name, g] : graphs) {
    if (!is_median_graph(g)) {
      o.fail(name + " not recognized as median");
      continue;
    }
    const auto dm = bfs_all_pairs(g);
    const auto ref = oracle::floyd(g.vertex_count(), g.edges());
    const int n = g.vertex_count();
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w) {
          const std::vector<Vertex> t{u, v, w};
          const int perimeter = ref[u][v] + ref[u][w] + ref[v][w];
          if (2 * fermat_value_graph(g, dm, t).value != perimeter) o.fail(name + ": median formula");
        }
    if (graph_best_constant(Fermat3Table(g, dm)).best != Rational(1, 2)) o.fail(name + ": best constant");
  }
  if (is_median_graph(complete_graph(3))) o.fail("K3 recognized as median");
  if (is_median_graph(complete_bipartite_graph(2, 3))) o.fail("K2,3 recognized as median");
  const double secs = seconds_since(t0);
  if (secs >= 30) o.fail("took " + std::to_string(secs) + " s");
  if (o.ok) o.detail = "52 median graphs at 1/2, K3 and K2,3 rejected";
  return o;
}

Outcome direction_sandwich() {
  Outcome o;
  for (int n = 3; n <= 5; ++n) {
    const auto d = direction_distance(n);
    const Rational witness = simplex_ratio(d, d.witnesses.front()).ratio;
    if (witness != Rational(n, n * n - 2 * n + 2)) o.fail("n=" + std::to_string(n) + " witness " + to_string(witness));
    const auto found =
        verify_simplex(d, Rational(1, n - 2), config_sampler(lattice_space(), n), 100000, 77, {}, true);
    if (!found.empty()) o.fail("n=" + std::to_string(n) + ": ratio reaches 1/(n-2)");
  }
  if (o.ok) o.detail = "witnesses exact, 3 x 10^5 lattice samples strictly below";
  return o;
}

Outcome sec_oracle() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> coord(-20, 20), size(1, 8);
  double worst = 0;
  for (int t = 0; t < 10000; ++t) {
    std::vector<Point2> pts(static_cast<std::size_t>(size(rng)));
    std::vector<oracle::Pt> ref;
    for (auto& p : pts) {
      p = {double(coord(rng)), double(coord(rng))};
      ref.push_back({p.x, p.y});
    }
    worst = std::max(worst, std::abs(smallest_enclosing_circle(pts).radius - oracle::sec_radius_brute(ref)));
  }
  if (worst > 1e-9) o.fail("radius error " + std::to_string(worst));
  if (o.ok) o.detail = "10^4 instances, max radius error " + std::to_string(worst);
  return o;
}

Outcome weiszfeld_oracle() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<VecK> pts(1 + rng() % 6);
    std::vector<oracle::Pt> ref;
    for (auto& p : pts) {
      p = vec2(u(rng), u(rng));
      ref.push_back({p(0), p(1)});
    }
    worst = std::max(worst, std::abs(weiszfeld(pts).value - oracle::fermat_value_grid(ref)));
  }
  if (worst > 1e-5) o.fail("grid mismatch " + std::to_string(worst));
  const std::vector<VecK> tri{vec2(0, 0), vec2(1, 0), vec2(0.5, std::sqrt(3.0) / 2)};
  const std::vector<VecK> square{vec2(0, 0), vec2(1, 0), vec2(1, 1), vec2(0, 1)};
  if (std::abs(weiszfeld(tri).value - std::sqrt(3.0)) > 1e-7) o.fail("equilateral triangle");
  if (std::abs(weiszfeld(square).value - 2 * std::sqrt(2.0)) > 1e-7) o.fail("unit square");
  if (o.ok) o.detail = "100 instances, max grid gap " + std::to_string(worst);
  return o;
}

Outcome homogeneity() {
  Outcome o;
  const auto space = plane_space();
  const std::vector<double> scales{0.25, 0.5, 2.0, 4.0, 10.0};
  const double q1 = homogeneity_degree(radius_distance(4), config_sampler(space, 4), scales, 1000, 8).degree;
  const double q2 = homogeneity_degree(area_distance(4), config_sampler(space, 4), scales, 1000, 8).degree;
  const double q0 =
      homogeneity_degree(direction_distance_float(4), config_sampler(space, 4), scales, 1000, 8).degree;
  if (std::abs(q1 - 1) > 1e-6 || std::abs(q2 - 2) > 1e-6 || std::abs(q0) > 1e-6) o.fail("degree off");
  char buf[128];
  std::snprintf(buf, sizeof buf, "q = %.9f, %.9f, %.9f", q1, q2, q0);
  o.detail = o.ok ? buf : o.detail + " (" + buf + ")";
  return o;
}

Outcome lemma_and_area_remark() {
  Outcome o;
  std::mt19937_64 rng(9);
  // Exact rationals: equality cases are decided without tolerance.
  std::uniform_int_distribution<int> num(0, 30), den(1, 7), len(1, 6);
  std::size_t lemma_bad = 0;
  for (int t = 0; t < 100000; ++t) {
    const int n = len(rng);
    Rational total(0), rhs(0);
    for (int i = 0; i < n; ++i) {
      const Rational a(num(rng), den(rng));
      total += a;
      rhs += a / (Rational(1) + a);
    }
    const Rational a = total * Rational(num(rng), 30);  // 0 <= a <= sum
    if (a / (Rational(1) + a) > rhs) ++lemma_bad;
  }
  if (lemma_bad) o.fail(std::to_string(lemma_bad) + " lemma violations");

  // The n = 2 area is pi |AB|^2 / 4; compare both the distance and squared lengths.
  const auto area = area_distance(2, AllowNonDistance{});
  std::uniform_int_distribution<int> coord(-50, 50);
  std::size_t area_bad = 0;
  for (int t = 0; t < 100000; ++t) {
    const std::int64_t ax = coord(rng), ay = coord(rng), bx = coord(rng), by = coord(rng), zx = coord(rng),
                       zy = coord(rng);
    auto sq = [](std::int64_t x, std::int64_t y) { return x * x + y * y; };
    if (sq(ax - bx, ay - by) > 2 * sq(ax - zx, ay - zy) + 2 * sq(zx - bx, zy - by)) ++area_bad;
    const Point2 A{double(ax), double(ay)}, B{double(bx), double(by)}, Z{double(zx), double(zy)};
    const double lhs = area.eval(std::vector<Point2>{A, B});
    const double rhs = 2 * (area.eval(std::vector<Point2>{A, Z}) + area.eval(std::vector<Point2>{Z, B}));
    if (lhs > rhs * (1 + 1e-12)) ++area_bad;
  }
  if (area_bad) o.fail(std::to_string(area_bad) + " area violations");
  if (o.ok) o.detail = "2 x 10^5 draws, 0 violations";
  return o;
}

Outcome g_distance_suite() {
  Outcome o;
  for (int n = 3; n <= 4; ++n) {
    const std::string tag = " n=" + std::to_string(n);
    const auto plane = config_sampler(plane_space(), n);
    const auto labels = config_sampler(label_space(), n);
    const auto g_k = make_weighted_sum_g(1.0 / (n - 1), n);  // both base distances attain 1/(n-1)

    // (a) scaling
    for (double lambda : {0.5, 2.0, 10.0})
      if (!is_g_distance(scale(sum_plane(n), lambda), g_k, plane, 10000, 1).passed()) o.fail("scale" + tag);
    if (!is_g_distance(scale(drastic(n), Rational(3)), g_k, labels, 10000, 1).passed()) o.fail("scale drastic" + tag);
    // (b) sums
    if (!is_g_distance(combine_add(sum_plane(n), diameter_plane(n)), g_k, plane, 10000, 2).passed())
      o.fail("add" + tag);
    if (!is_g_distance(combine_add(drastic(n), cardinality(n)), g_k, labels, 10000, 2).passed())
      o.fail("add labels" + tag);
    // (e) d / (1 + d)
    for (double lambda : {1.0, 2.0}) {
      const auto g = make_weighted_sum_g(lambda, n);
      if (!is_g_distance(bound_g_distance(sum_plane(n), g), g, plane, 10000, 3).passed()) o.fail("bound" + tag);
      if (!is_g_distance(bound_g_distance(drastic(n), g), g, labels, 10000, 3).passed())
        o.fail("bound drastic" + tag);
    }

    const auto r = r_vector_sampler(n);
    for (double lambda : {0.0, 0.25, 1.0 / 3.0, 0.5, 1.0, 2.0, 7.5}) {
      const auto form = check_additive_form(make_weighted_sum_g(lambda, n), r, 10000);
      if (!form.additive || form.lambda != lambda) o.fail("additive form" + tag);
    }
    if (check_additive_form(make_max_g(n), r, 10000).additive) o.fail("max accepted as additive" + tag);

    for (const auto& g : {make_scaled_min_g(n, n), make_weighted_sum_g(0.5, n), make_weighted_sum_g(3.0, n)})
      if (!check_concavity(g, r, 10000).passed()) o.fail("concavity " + g.name + tag);
  }
  if (o.ok) o.detail = "scale, add, bound, additive form and concavity at 10^4 samples";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"closed-form constants table", table_constants},
      {"simplex soundness fuzz", simplex_fuzz},
      {"Fermat sandwich", fermat_sandwich},
      {"median graphs", median_graphs},
      {"direction sandwich", direction_sandwich},
      {"SEC oracle", sec_oracle},
      {"Weiszfeld oracle", weiszfeld_oracle},
      {"homogeneity degrees", homogeneity},
      {"bounded transform lemma and n=2 area inequality", lemma_and_area_remark},
      {"g-distance constructions", g_distance_suite},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] criterion %zu: %s (%.1f s) %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
