#include "ndist/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "ndist/estimate.hpp"
#include "ndist/registry.hpp"
#include "ndist/report.hpp"
#include "ndist/verify.hpp"

namespace ndist {

namespace {

struct RunConfig {
  std::string distance;
  int n = 3;
  std::size_t samples = 10000;
  std::size_t budget = 10000;
  std::uint64_t seed = 1;
  std::string space;
  int dim = 2;
  std::string points_path;
  std::string graph_path;
  std::string out_path;
  std::string format;
  int n_min = 2;
  int n_max = 6;
  std::vector<std::string> distances;
  unsigned workers = default_workers();
  std::string graph_action;
};

constexpr int kMaxBestConstantVertices = 128;

class Runner {
 public:
  Runner(const RunConfig& rc, std::ostream& out, std::ostream& err) : rc_(rc), out_(out), err_(err) {}

  int check();
  int estimate();
  int witness();
  int table();
  int fermat();
  int sec();
  int graph();

 private:
  void emit(const std::string& text) const {
    if (rc_.out_path.empty())
      out_ << text;
    else
      write_file_atomic(rc_.out_path, text);
  }

  std::shared_ptr<const Graph> load_graph() const {
    std::ifstream in(rc_.graph_path);
    if (!in) throw ParseError("cannot open graph file '" + rc_.graph_path + "'");
    return std::make_shared<const Graph>(parse_graph(in));
  }

  DistanceParams params() const {
    DistanceParams p;
    p.space = rc_.space;
    p.dim = rc_.dim;
    if (!rc_.graph_path.empty()) p.graph = load_graph();
    return p;
  }

  EstimateOptions estimate_options() const {
    EstimateOptions opt;
    opt.budget = rc_.budget;
    opt.seed = rc_.seed;
    opt.workers = rc_.workers;
    return opt;
  }

  const RunConfig& rc_;
  std::ostream& out_;
  std::ostream& err_;
};

// ---------------------------------------------------------------------------

int Runner::check() {
  const AnyDistance any = make_distance(rc_.distance, rc_.n, params());
  return std::visit(
      [&](const auto& reg) {
        const auto& d = reg.distance;
        const auto sampler = config_sampler(reg.space, d.arity);
        const auto axioms = verify_axioms(d, sampler, rc_.samples, rc_.seed, rc_.workers);
        Rational k(1);
        bool strict = false;
        if (d.theoretical_k) {
          k = d.theoretical_k->hi;
          strict = d.theoretical_k->hi_exclusive;
        }
        const auto violations = verify_simplex(d, k, sampler, rc_.samples, rc_.seed, d.witnesses, strict, rc_.workers);

        Json j;
        j["distance"] = d.name;
        j["n"] = d.arity;
        j["seed"] = rc_.seed;
        j["samples"] = rc_.samples;
        j["k_tested"] = to_string(k);
        j["k_exclusive"] = strict;
        Json ax;
        ax["simplex_failures"] = axioms.simplex_failures;
        ax["symmetry_failures"] = axioms.symmetry_failures;
        ax["identity_failures"] = axioms.identity_failures;
        Json ce = Json::array();
        for (const auto& f : axioms.counterexamples) {
          Json c;
          c["condition"] = to_string(f.condition);
          c["sample"] = f.sample_index;
          c["config"] = config_json(f.config);
          c["detail"] = f.detail;
          ce.push_back(std::move(c));
        }
        ax["counterexamples"] = std::move(ce);
        j["axioms"] = std::move(ax);
        j["simplex_violations"] = violations.size();
        Json vs = Json::array();
        for (std::size_t i = 0; i < std::min<std::size_t>(violations.size(), 20); ++i)
          vs.push_back(violation_json(violations[i]));
        j["violations"] = std::move(vs);
        const bool passed = axioms.passed() && violations.empty();
        j["passed"] = passed;
        emit(dump_json(j));
        if (!passed) {
          err_ << d.name << ": " << axioms.simplex_failures + axioms.symmetry_failures + axioms.identity_failures
               << " axiom failure(s), " << violations.size() << " simplex violation(s) at K = " << to_string(k)
               << "\n";
        }
        return passed ? kExitOk : kExitFinding;
      },
      any);
}

int Runner::estimate() {
  const AnyDistance any = make_distance(rc_.distance, rc_.n, params());
  return std::visit(
      [&](const auto& reg) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto rep = estimate_best_constant(reg.distance, reg.space, estimate_options());
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        emit(dump_json(estimate_json(rep, static_cast<std::int64_t>(ms))));
        if (!rep.violations.empty()) {
          err_ << rep.distance_name << ": " << rep.violations.size()
               << " configuration(s) exceed the theoretical constant " << rep.theoretical_k->describe() << "\n";
          return kExitFinding;
        }
        return kExitOk;
      },
      any);
}

int Runner::witness() {
  const AnyDistance any = make_distance(rc_.distance, rc_.n, params());
  return std::visit(
      [&](const auto& reg) {
        const auto& d = reg.distance;
        if (d.witnesses.empty()) throw ConfigError(d.name + " has no registered witness");
        const std::string theo = d.theoretical_k ? d.theoretical_k->describe() : "unknown";
        if (rc_.format == "json") {
          Json j;
          j["distance"] = d.name;
          j["n"] = d.arity;
          Json ws = Json::array();
          for (const auto& w : d.witnesses) {
            const auto s = simplex_ratio(d, w);
            Json e = config_json(w);
            e["ratio"] = format_ratio(s.ratio);
            e["ratio_value"] = value_json(s.ratio);
            ws.push_back(std::move(e));
          }
          j["witnesses"] = std::move(ws);
          j["theoretical"] = theoretical_json(d.theoretical_k);
          emit(dump_json(j));
          return kExitOk;
        }
        std::ostringstream os;
        os << "distance: " << d.name << "\n" << "n: " << d.arity << "\n";
        for (const auto& w : d.witnesses) {
          const auto s = simplex_ratio(d, w);
          os << "witness: " << format_config(w) << "\n";
          os << "value: " << format_value(s.numerator) << "\n";
          os << "replaced_sum: " << format_value(s.denominator) << "\n";
          os << "ratio: " << format_ratio(s.ratio) << "\n";
        }
        os << "theoretical: " << theo << "\n";
        emit(os.str());
        return kExitOk;
      },
      any);
}

template <class V>
std::string table_status(const V& est, const std::optional<TheoreticalK>& tk) {
  if (!tk) return "within-bounds";
  if constexpr (ValueTraits<V>::exact) {
    if (tk->is_exact()) return est == tk->lo ? "match" : "VIOLATION";
    const bool below_hi = tk->hi_exclusive ? est < tk->hi : est <= tk->hi;
    return est >= tk->lo && below_hi ? "within-bounds" : "VIOLATION";
  } else {
    const double lo = to_double(tk->lo), hi = to_double(tk->hi);
    if (tk->is_exact()) return std::abs(est - lo) <= kFloatTolerance ? "match" : "VIOLATION";
    return est >= lo - kFloatTolerance && est <= hi + kFloatTolerance ? "within-bounds" : "VIOLATION";
  }
}

int Runner::table() {
  if (rc_.n_min < 2 || rc_.n_max < rc_.n_min || rc_.n_max > 32) {
    throw ArgumentError("table needs 2 <= n-min <= n-max <= 32");
  }
  DistanceParams p;
  if (!rc_.graph_path.empty()) p.graph = load_graph();
  const auto& names = rc_.distances.empty() ? registered_names() : rc_.distances;

  struct Row {
    std::string distance, lo, hi, estimated, witness_ratio, status;
    int n;
  };
  std::vector<Row> rows;
  for (const auto& name : names) {
    for (int n = rc_.n_min; n <= rc_.n_max; ++n) {
      if (n < min_arity(name) || (name == "fermat_graph3" && n != 3)) continue;
      const AnyDistance any = make_distance(name, n, p);
      std::visit(
          [&](const auto& reg) {
            const auto rep = estimate_best_constant(reg.distance, reg.space, estimate_options());
            Row r;
            r.distance = name;
            r.n = n;
            r.lo = rep.theoretical_k ? to_string(rep.theoretical_k->lo) : "";
            r.hi = rep.theoretical_k ? to_string(rep.theoretical_k->hi) : "";
            r.estimated = format_value(rep.best_ratio);
            r.witness_ratio = rep.registered_best ? format_value(*rep.registered_best) : "";
            r.status = table_status(rep.best_ratio, rep.theoretical_k);
            rows.push_back(std::move(r));
          },
          any);
    }
  }

  std::ostringstream os;
  const bool any_violation =
      std::any_of(rows.begin(), rows.end(), [](const Row& r) { return r.status == "VIOLATION"; });
  if (rc_.format == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json j;
      j["distance"] = r.distance;
      j["n"] = r.n;
      j["theoretical_lo"] = r.lo;
      j["theoretical_hi"] = r.hi;
      j["estimated"] = r.estimated;
      j["witness_ratio"] = r.witness_ratio;
      j["status"] = r.status;
      arr.push_back(std::move(j));
    }
    os << dump_json(arr);
  } else {
    os << "distance,n,theoretical_lo,theoretical_hi,estimated,witness_ratio,status\n";
    for (const auto& r : rows) {
      os << r.distance << ',' << r.n << ',' << r.lo << ',' << r.hi << ',' << r.estimated << ',' << r.witness_ratio
         << ',' << r.status << '\n';
    }
  }
  emit(os.str());
  return any_violation ? kExitFinding : kExitOk;
}

int Runner::fermat() {
  const auto file = read_points_file(rc_.points_path);
  std::vector<VecK> pts;
  for (const auto& p : file.points) pts.push_back(vec2(p.x, p.y));
  const auto r = weiszfeld(pts);
  if (rc_.format == "json") {
    Json j;
    j["minimizer"] = point_json(r.minimizer);
    j["value"] = r.value;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["anchor"] = r.anchor ? Json(*r.anchor) : Json(nullptr);
    emit(dump_json(j));
  } else {
    std::ostringstream os;
    os << "minimizer: " << format_point(r.minimizer) << "\n"
       << "value: " << format_value(r.value) << "\n"
       << "iterations: " << r.iterations << "\n"
       << "converged: " << (r.converged ? "true" : "false") << "\n"
       << "anchor: " << (r.anchor ? std::to_string(*r.anchor) : std::string("none")) << "\n";
    emit(os.str());
  }
  if (!r.converged) {
    err_ << "weiszfeld: no optimality certificate after " << r.iterations << " iterations\n";
    return kExitFinding;
  }
  return kExitOk;
}

int Runner::sec() {
  const auto file = read_points_file(rc_.points_path);
  const auto c = smallest_enclosing_circle(file.points, rc_.seed);
  if (rc_.format == "json") {
    Json j;
    j["center"] = point_json(c.center);
    j["radius"] = c.radius;
    Json s = Json::array();
    for (const auto& p : c.support) s.push_back(point_json(p));
    j["support"] = std::move(s);
    emit(dump_json(j));
  } else {
    std::ostringstream os;
    os << "center: " << format_point(c.center) << "\n" << "radius: " << format_value(c.radius) << "\n" << "support:";
    for (const auto& p : c.support) os << " " << format_point(p);
    os << "\n";
    emit(os.str());
  }
  return kExitOk;
}

int Runner::graph() {
  const auto g = load_graph();
  const auto dm = bfs_all_pairs(*g);
  const auto mc = check_median_graph(*g, rc_.workers);
  auto triple_text = [&] {
    return std::to_string(mc.offending[0]) + " " + std::to_string(mc.offending[1]) + " " +
           std::to_string(mc.offending[2]) + " (" + std::to_string(mc.median_count) + " medians)";
  };
  std::ostringstream os;

  if (rc_.graph_action == "median-check") {
    os << "vertices: " << g->vertex_count() << "\n" << "edges: " << g->edge_count() << "\n";
    os << "median: " << (mc.is_median ? "true" : "false") << "\n";
    if (!mc.is_median) os << "offending_triple: " << triple_text() << "\n";
    emit(os.str());
    if (!mc.is_median) err_ << "not a median graph: triple " << triple_text() << "\n";
    return mc.is_median ? kExitOk : kExitFinding;
  }

  if (rc_.graph_action == "fermat3-table") {
    if (!mc.is_median) {
      err_ << "not a median graph: triple " << triple_text() << "\n";
      return kExitFinding;
    }
    os << "u,v,w,d_m,median,half_perimeter\n";
    const int n = g->vertex_count();
    const auto dist = fermat3_graph_distance(*g);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u; v < n; ++v)
        for (Vertex w = v; w < n; ++w) {
          const std::vector<Vertex> t{u, v, w};
          const Rational half(dm(u, v) + dm(u, w) + dm(v, w), 2);
          os << u << ',' << v << ',' << w << ',' << to_string(dist.eval(t)) << ',' << median_vertex(*g, dm, u, v, w)
             << ',' << to_string(half) << '\n';
        }
    emit(os.str());
    return kExitOk;
  }

  // best-constant
  if (g->vertex_count() > kMaxBestConstantVertices) {
    throw ArgumentError("best-constant is exhaustive over V^4 tuples; graphs are capped at " +
                        std::to_string(kMaxBestConstantVertices) + " vertices");
  }
  const Fermat3Table table(*g, dm, rc_.workers);
  const auto best = graph_best_constant(table, rc_.workers);
  os << "vertices: " << g->vertex_count() << "\n";
  os << "median: " << (mc.is_median ? "true" : "false") << "\n";
  os << "best_constant: " << to_string(best.best) << "\n";
  os << "argmax: " << best.argmax[0] << " " << best.argmax[1] << " " << best.argmax[2] << " ; z = " << best.argmax[3]
     << "\n";
  emit(os.str());
  return kExitOk;
}

std::uint64_t seed_from_env() {
  const char* env = std::getenv("ND_SEED");
  if (!env || !*env) return 1;
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(env, &pos);
    if (pos != std::string(env).size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ArgumentError(std::string("ND_SEED must be a nonnegative integer, got '") + env + "'");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Best constants of n-distances: axiom checks, estimation, witnesses, geometry and graph tools",
               "ndist"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  try {
    rc.seed = seed_from_env();
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  auto distance_opts = [&](CLI::App* sub) {
    sub->add_option("--distance", rc.distance, "Distance name, e.g. diameter or add(drastic,cardinality)")
        ->required();
    sub->add_option("--n", rc.n, "Arity")->required();
    sub->add_option("--space", rc.space, "Ground space (labels, real, plane, rational, lattice, rk, vertices)");
    sub->add_option("--dim", rc.dim, "Dimension for --space rk")->check(CLI::PositiveNumber);
    sub->add_option("--graph", rc.graph_path, "Graph file for fermat_graph3");
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", rc.seed, "Seed (default: ND_SEED or 1)");
    sub->add_option("--workers", rc.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", rc.out_path, "Write the report to this file");
  };

  auto* check = app.add_subcommand("check", "Sample the axioms and the simplex inequality at the theoretical K");
  distance_opts(check);
  common(check);
  check->add_option("--samples", rc.samples, "Sampled configurations")->check(CLI::PositiveNumber);

  auto* estimate = app.add_subcommand("estimate", "Estimate the best constant (JSON report)");
  distance_opts(estimate);
  common(estimate);
  estimate->add_option("--budget,--samples", rc.budget, "Random configurations")->check(CLI::PositiveNumber);

  auto* witness = app.add_subcommand("witness", "Evaluate the registered extremal configurations");
  distance_opts(witness);
  witness->add_option("--out", rc.out_path, "Write the output to this file");
  witness->add_option("--format", rc.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* table = app.add_subcommand("table", "Compare estimated and theoretical constants");
  common(table);
  table->add_option("--n-min", rc.n_min, "Smallest arity");
  table->add_option("--n-max", rc.n_max, "Largest arity");
  table->add_option("--budget,--samples", rc.budget, "Random configurations per row")->check(CLI::PositiveNumber);
  table->add_option("--distances", rc.distances, "Comma-separated subset of distances")->delimiter(',');
  table->add_option("--graph", rc.graph_path, "Graph file for fermat_graph3");
  table->add_option("--format", rc.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* fermat = app.add_subcommand("fermat", "Geometric median of a points file");
  fermat->add_option("--points", rc.points_path, "CSV with header x,y")->required();
  fermat->add_option("--out", rc.out_path, "Write the output to this file");
  fermat->add_option("--format", rc.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* sec = app.add_subcommand("sec", "Smallest enclosing circle of a points file");
  sec->add_option("--points", rc.points_path, "CSV with header x,y")->required();
  sec->add_option("--seed", rc.seed, "Shuffle seed");
  sec->add_option("--out", rc.out_path, "Write the output to this file");
  sec->add_option("--format", rc.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* graph = app.add_subcommand("graph", "Median-graph tools");
  graph->add_option("action", rc.graph_action, "median-check, fermat3-table or best-constant")
      ->required()
      ->check(CLI::IsMember({"median-check", "fermat3-table", "best-constant"}));
  graph->add_option("--graph", rc.graph_path, "Graph file: 'V E' then one 'u v' edge per line")->required();
  graph->add_option("--workers", rc.workers, "Worker threads")->check(CLI::PositiveNumber);
  graph->add_option("--out", rc.out_path, "Write the output to this file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Runner runner(rc, out, err);
  try {
    if (*check) return runner.check();
    if (*estimate) return runner.estimate();
    if (*witness) return runner.witness();
    if (*table) return runner.table();
    if (*fermat) return runner.fermat();
    if (*sec) return runner.sec();
    if (*graph) return runner.graph();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    // Axiom violations, uncertified solver runs, non-median triples.
    err << "finding: " << e.what() << "\n";
    return kExitFinding;
  }
  return kExitUsage;
}

}  // namespace ndist
