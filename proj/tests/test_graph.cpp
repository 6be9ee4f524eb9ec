#include <doctest.h>

#include <sstream>

#include "ndist/graph.hpp"
#include "ndist/verify.hpp"
#include "oracles.hpp"

using namespace ndist;

namespace {

std::vector<std::vector<int>> reference_distances(const Graph& g) {
  return oracle::floyd(g.vertex_count(), g.edges());
}

// Vertex of Q3 with bit label `bits` (generator numbering).
Vertex q3(int bits) { return bits; }

}  // namespace

TEST_CASE("graph construction") {
  const std::vector<std::pair<int, int>> loop{{0, 0}};
  CHECK_THROWS_AS(Graph(2, loop), StructuralError);
  const std::vector<std::pair<int, int>> parallel{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(Graph(2, parallel), StructuralError);
  const std::vector<std::pair<int, int>> range{{0, 5}};
  CHECK_THROWS_AS(Graph(2, range), StructuralError);

  const std::vector<std::pair<int, int>> two{{0, 1}, {2, 3}};
  CHECK_THROWS_AS(bfs_all_pairs(Graph(4, two)), StructuralError);
}

TEST_CASE("shortest paths") {
  CHECK(bfs_all_pairs(path_graph(3))(0, 2) == 2);
  CHECK(bfs_all_pairs(cycle_graph(4))(0, 2) == 2);
  CHECK(bfs_all_pairs(hypercube_graph(3))(q3(0b000), q3(0b111)) == 3);

  for (const Graph& g : {grid_graph(3, 4), hypercube_graph(4), random_tree(15, 3), complete_bipartite_graph(2, 3),
                         cycle_graph(7)}) {
    const auto dm = bfs_all_pairs(g);
    const auto ref = reference_distances(g);
    for (int u = 0; u < g.vertex_count(); ++u)
      for (int v = 0; v < g.vertex_count(); ++v) CHECK(dm(u, v) == ref[u][v]);
  }
}

TEST_CASE("generators") {
  CHECK(path_graph(5).edge_count() == 4);
  CHECK(cycle_graph(5).edge_count() == 5);
  CHECK(grid_graph(3, 3).edge_count() == 12);
  CHECK(hypercube_graph(3).edge_count() == 12);
  CHECK(complete_graph(4).edge_count() == 6);
  CHECK(complete_bipartite_graph(2, 3).edge_count() == 6);
  const auto t = random_tree(20, 5);
  CHECK(t.vertex_count() == 20);
  CHECK(t.edge_count() == 19);
  CHECK(random_tree(20, 5).edges() == t.edges());
}

TEST_CASE("graph fermat values") {
  const auto p = path_graph(3);
  const auto dm = bfs_all_pairs(p);
  const std::vector<Vertex> uvw{0, 1, 2};
  const auto f = fermat_value_graph(p, dm, uvw);
  CHECK(f.value == 2);
  CHECK(f.fermat_set == std::vector<Vertex>{1});

  const std::vector<Vertex> vvv{1, 1, 1};
  const auto f0 = fermat_value_graph(p, dm, vvv);
  CHECK(f0.value == 0);
  CHECK(f0.fermat_set == std::vector<Vertex>{1});

  const auto c4 = cycle_graph(4);
  const std::vector<Vertex> corner{0, 2, 1};  // 1 is adjacent to both 0 and 2
  CHECK(fermat_value_graph(c4, bfs_all_pairs(c4), corner).value == 2);

  const std::vector<Vertex> bad{0, 9};
  CHECK_THROWS_AS(fermat_value_graph(p, dm, bad), ArgumentError);
}

TEST_CASE("medians") {
  const auto q = hypercube_graph(3);
  const auto dm = bfs_all_pairs(q);
  CHECK(median_vertex(q, dm, q3(0b000), q3(0b011), q3(0b101)) == q3(0b001));

  const auto k23 = complete_bipartite_graph(2, 3);
  const auto dk = bfs_all_pairs(k23);
  // The three vertices of the larger side have two medians.
  CHECK_THROWS_AS(median_vertex(k23, dk, 2, 3, 4), NotMedianError);

  // Trees: the three paths meet in one vertex.
  const auto t = random_tree(12, 2);
  const auto dt = bfs_all_pairs(t);
  const auto ref = reference_distances(t);
  for (int u = 0; u < 12; ++u)
    for (int v = 0; v < 12; ++v)
      for (int w = 0; w < 12; ++w) {
        const auto m = oracle::medians(ref, u, v, w);
        REQUIRE(m.size() == 1);
        CHECK(median_vertex(t, dt, u, v, w) == m.front());
      }
}

TEST_CASE("median graph recognition") {
  CHECK(is_median_graph(path_graph(6)));
  CHECK(is_median_graph(random_tree(18, 9)));
  CHECK(is_median_graph(grid_graph(3, 3)));
  CHECK(is_median_graph(hypercube_graph(3)));
  CHECK(is_median_graph(cycle_graph(4)));
  CHECK_FALSE(is_median_graph(complete_graph(3)));
  CHECK_FALSE(is_median_graph(complete_bipartite_graph(2, 3)));
  CHECK_FALSE(is_median_graph(cycle_graph(5)));

  const auto k3 = check_median_graph(complete_graph(3));
  CHECK_FALSE(k3.is_median);
  CHECK(k3.offending == std::array<Vertex, 3>{0, 1, 2});
  // No vertex lies on all three geodesics of a triangle.
  CHECK(k3.median_count == 0);

  // Same answer for any worker count, and it agrees with the definition.
  for (const Graph& g : {cycle_graph(6), grid_graph(2, 4), complete_bipartite_graph(2, 3), cycle_graph(5)}) {
    const auto ref = reference_distances(g);
    bool median = true;
    for (int u = 0; u < g.vertex_count() && median; ++u)
      for (int v = 0; v < g.vertex_count() && median; ++v)
        for (int w = 0; w < g.vertex_count() && median; ++w) median = oracle::medians(ref, u, v, w).size() == 1;
    CHECK(is_median_graph(g, 1) == median);
    CHECK(is_median_graph(g, 4) == median);
  }
}

TEST_CASE("fermat 3-distance on graphs") {
  const auto p = path_graph(3);
  const auto d = fermat3_graph_distance(p);
  CHECK(d.eval(std::vector<Vertex>{0, 1, 2}) == 2);
  CHECK(d.eval(std::vector<Vertex>{1, 1, 1}) == 0);
  REQUIRE(d.theoretical_k);
  CHECK(d.theoretical_k->hi == Rational(1, 2));

  const auto q = hypercube_graph(3);
  CHECK(fermat3_graph_distance(q).eval(std::vector<Vertex>{q3(0b000), q3(0b011), q3(0b101)}) == 3);

  // Not median: no constant is recorded.
  CHECK_FALSE(fermat3_graph_distance(complete_bipartite_graph(2, 3)).theoretical_k);

  const auto g = grid_graph(3, 3);
  CHECK(verify_axioms(fermat3_graph_distance(g),
                      config_sampler(Space<Vertex>{"vertices",
                                                   [](Rng& r) { return static_cast<Vertex>(r() % 9); },
                                                   [](const Vertex& v, double, Rng&) { return v; }},
                                     3),
                      2000, 3)
            .passed());
}

TEST_CASE("exhaustive best constant") {
  for (const Graph& g : {path_graph(4), grid_graph(3, 3), hypercube_graph(3), random_tree(10, 1)}) {
    const auto dm = bfs_all_pairs(g);
    const Fermat3Table table(g, dm);
    const auto best = graph_best_constant(table);
    CHECK(best.best == Rational(1, 2));
    const auto [u, v, w, z] = best.argmax;
    const Rational num(table(u, v, w));
    const Rational den(table(z, v, w) + table(u, z, w) + table(u, v, z));
    CHECK(num / den == Rational(1, 2));
  }
  // Graphs that are not median: compare with the definition.
  for (const Graph& g : {complete_bipartite_graph(2, 3), complete_graph(3), cycle_graph(5), cycle_graph(6)}) {
    const auto [num, den] = oracle::graph_best_constant_brute(reference_distances(g));
    CHECK(graph_best_constant(Fermat3Table(g, bfs_all_pairs(g))).best == Rational(num, den));
  }
}

TEST_CASE("graph file parsing") {
  std::istringstream ok("# comment\n3 2\n\n0 1\n1 2\n");
  const auto g = parse_graph(ok);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);

  std::istringstream short_list("3 2\n0 1\n");
  CHECK_THROWS_AS(parse_graph(short_list), ParseError);
  std::istringstream junk("3 x\n");
  CHECK_THROWS_AS(parse_graph(junk), ParseError);
  std::istringstream big("5000 0\n");
  CHECK_THROWS_AS(parse_graph(big), ParseError);
  std::istringstream bad_endpoint("3 1\n0 7\n");
  CHECK_THROWS(parse_graph(bad_endpoint));
}
