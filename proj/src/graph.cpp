#include "ndist/graph.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "ndist/random.hpp"

namespace ndist {

Graph::Graph(int vertex_count, std::span<const std::pair<int, int>> edges) {
  if (vertex_count < 1) throw StructuralError("graph needs at least one vertex");
  adj_.resize(static_cast<std::size_t>(vertex_count));
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      throw StructuralError("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range [0, " +
                            std::to_string(vertex_count) + ")");
    }
    if (u == v) throw StructuralError("loop at vertex " + std::to_string(u));
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      throw StructuralError("parallel edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
    edges_.emplace_back(u, v);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

DistanceMatrix bfs_all_pairs(const Graph& g) {
  const int n = g.vertex_count();
  DistanceMatrix dm(n);
  std::vector<int> dist(static_cast<std::size_t>(n));
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<Vertex> q;
    dist[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      const Vertex u = q.front();
      q.pop();
      for (Vertex v : g.neighbors(u)) {
        if (dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          q.push(v);
        }
      }
    }
    for (Vertex t = 0; t < n; ++t) {
      if (dist[static_cast<std::size_t>(t)] < 0) {
        throw StructuralError("graph is disconnected: no path from " + std::to_string(s) + " to " +
                              std::to_string(t));
      }
      dm.at(s, t) = dist[static_cast<std::size_t>(t)];
    }
  }
  return dm;
}

GraphFermat fermat_value_graph(const Graph& g, const DistanceMatrix& dm, std::span<const Vertex> tuple) {
  const int n = g.vertex_count();
  if (dm.size() != n) throw ArgumentError("distance matrix does not match the graph");
  for (Vertex v : tuple) {
    if (v < 0 || v >= n) throw ArgumentError("vertex " + std::to_string(v) + " out of range");
  }
  GraphFermat out;
  out.value = std::numeric_limits<std::int64_t>::max();
  for (Vertex y = 0; y < n; ++y) {
    std::int64_t s = 0;
    for (Vertex x : tuple) s += dm(x, y);
    if (s < out.value) {
      out.value = s;
      out.fermat_set.clear();
    }
    if (s == out.value) out.fermat_set.push_back(y);
  }
  return out;
}

std::vector<Vertex> medians(const DistanceMatrix& dm, Vertex u, Vertex v, Vertex w) {
  std::vector<Vertex> out;
  for (Vertex y = 0; y < dm.size(); ++y) {
    if (dm(u, y) + dm(y, v) == dm(u, v) && dm(u, y) + dm(y, w) == dm(u, w) && dm(v, y) + dm(y, w) == dm(v, w))
      out.push_back(y);
  }
  return out;
}

Vertex median_vertex(const Graph& g, const DistanceMatrix& dm, Vertex u, Vertex v, Vertex w) {
  const int n = g.vertex_count();
  for (Vertex x : {u, v, w})
    if (x < 0 || x >= n) throw ArgumentError("vertex " + std::to_string(x) + " out of range");
  const auto m = medians(dm, u, v, w);
  if (m.size() != 1) {
    throw NotMedianError("triple (" + std::to_string(u) + ", " + std::to_string(v) + ", " + std::to_string(w) +
                         ") has " + std::to_string(m.size()) + " medians");
  }
  return m.front();
}

MedianCheck check_median_graph(const Graph& g, unsigned workers) {
  const auto dm = bfs_all_pairs(g);
  const int n = g.vertex_count();
  // Each chunk records its first failing triple; the lowest u wins.
  std::vector<std::optional<MedianCheck>> found(static_cast<std::size_t>(n));
  parallel_chunks(static_cast<std::size_t>(n), workers, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t ui = begin; ui < end; ++ui) {
      const auto u = static_cast<Vertex>(ui);
      for (Vertex v = u; v < n && !found[ui]; ++v) {
        for (Vertex w = v; w < n; ++w) {
          const auto m = medians(dm, u, v, w);
          if (m.size() != 1) {
            found[ui] = MedianCheck{false, {u, v, w}, m.size()};
            break;
          }
        }
      }
    }
  });
  for (const auto& f : found)
    if (f) return *f;
  return {};
}

bool is_median_graph(const Graph& g, unsigned workers) { return check_median_graph(g, workers).is_median; }

NDistance<Vertex, Rational> fermat3_graph_distance(const Graph& g) {
  auto dm = std::make_shared<const DistanceMatrix>(bfs_all_pairs(g));
  NDistance<Vertex, Rational> d;
  d.name = "fermat_graph3";
  d.arity = 3;
  d.space_tag = "vertices";
  const int n = g.vertex_count();
  d.eval = [dm, n](std::span<const Vertex> x) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (Vertex y = 0; y < n; ++y) {
      std::int64_t s = 0;
      for (Vertex v : x) s += (*dm)(v, y);
      best = std::min(best, s);
    }
    return Rational(best);
  };
  if (is_median_graph(g)) {
    d.theoretical_k = TheoreticalK::exact_value(Rational(1, 2));
    if (g.edge_count() > 0) {
      // (u, v, v) with z = v across an edge: 1 / (0 + 1 + 1).
      const auto [u, v] = g.edges().front();
      d.witnesses.push_back(Config<Vertex>{{u, v, v}, v});
    }
  }
  return d;
}

Fermat3Table::Fermat3Table(const Graph& g, const DistanceMatrix& dm, unsigned workers)
    : n_(static_cast<std::size_t>(g.vertex_count())), t_(n_ * n_ * n_, 0) {
  if (dm.size() != g.vertex_count()) throw ArgumentError("distance matrix does not match the graph");
  parallel_chunks(n_, workers, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t u = begin; u < end; ++u) {
      for (std::size_t v = 0; v < n_; ++v) {
        for (std::size_t w = 0; w < n_; ++w) {
          std::int64_t best = std::numeric_limits<std::int64_t>::max();
          for (std::size_t y = 0; y < n_; ++y) {
            const auto Y = static_cast<Vertex>(y);
            best = std::min<std::int64_t>(best, dm(static_cast<Vertex>(u), Y) + dm(static_cast<Vertex>(v), Y) +
                                                    dm(static_cast<Vertex>(w), Y));
          }
          t_[(u * n_ + v) * n_ + w] = best;
        }
      }
    }
  });
}

GraphBestConstant graph_best_constant(const Fermat3Table& table, unsigned workers) {
  const auto n = static_cast<std::size_t>(table.size());
  std::vector<GraphBestConstant> per_u(n);
  parallel_chunks(n, workers, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t ui = begin; ui < end; ++ui) {
      const auto u = static_cast<Vertex>(ui);
      GraphBestConstant& best = per_u[ui];
      best.argmax = {u, 0, 0, 0};
      for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
        for (Vertex w = 0; w < static_cast<Vertex>(n); ++w) {
          const auto num = table(u, v, w);
          if (num == 0) continue;  // ratio 0 (0/0 := 0 included)
          for (Vertex z = 0; z < static_cast<Vertex>(n); ++z) {
            const auto den = table(z, v, w) + table(u, z, w) + table(u, v, z);
            if (den == 0) {
              throw AxiomViolation("fermat_graph3: positive value with zero simplex sum at (" + std::to_string(u) +
                                   ", " + std::to_string(v) + ", " + std::to_string(w) + "; " +
                                   std::to_string(z) + ")");
            }
            const Rational r(num, den);
            if (r > best.best) best = {r, {u, v, w, z}};
          }
        }
      }
    }
  });
  GraphBestConstant out;
  for (const auto& b : per_u)
    if (b.best > out.best) out = b;
  return out;
}

// ---------------------------------------------------------------------------

namespace {
Graph from_edges(int n, const std::vector<std::pair<int, int>>& e) { return Graph(n, e); }
}  // namespace

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return from_edges(n, e);
}

Graph cycle_graph(int n) {
  if (n < 3) throw StructuralError("cycle needs at least 3 vertices");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return from_edges(n, e);
}

Graph grid_graph(int rows, int cols) {
  std::vector<std::pair<int, int>> e;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) e.emplace_back(v, v + 1);
      if (r + 1 < rows) e.emplace_back(v, v + cols);
    }
  }
  return from_edges(rows * cols, e);
}

Graph hypercube_graph(int dim) {
  if (dim < 0 || dim > 12) throw StructuralError("hypercube dimension must lie in [0, 12]");
  const int n = 1 << dim;
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < n; ++v)
    for (int b = 0; b < dim; ++b)
      if (!(v & (1 << b))) e.emplace_back(v, v | (1 << b));
  return from_edges(n, e);
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return from_edges(n, e);
}

Graph complete_bipartite_graph(int a, int b) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return from_edges(a + b, e);
}

Graph random_tree(int n, std::uint64_t seed) {
  Rng rng = stream_rng(seed, static_cast<std::uint64_t>(n));
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    e.emplace_back(parent(rng), i);
  }
  return from_edges(n, e);
}

Graph parse_graph(std::istream& in, int max_vertices) {
  std::string line;
  int line_no = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      const auto first = out.find_first_not_of(" \t\r");
      if (first == std::string::npos || out[first] == '#') continue;
      return true;
    }
    return false;
  };
  auto fail = [&](const std::string& why) { throw ParseError("graph line " + std::to_string(line_no) + ": " + why); };
  auto read_pair = [&](const std::string& text, long long& a, long long& b) {
    std::istringstream ls(text);
    std::string extra;
    if (!(ls >> a >> b)) fail("expected two integers, got '" + text + "'");
    if (ls >> extra) fail("trailing text '" + extra + "'");
  };

  if (!next_line(line)) throw ParseError("graph file is empty");
  long long v = 0, m = 0;
  read_pair(line, v, m);
  if (v < 1) fail("vertex count must be positive");
  if (v > max_vertices) fail("vertex count " + std::to_string(v) + " exceeds the cap of " + std::to_string(max_vertices));
  if (m < 0 || m > v * (v - 1) / 2) fail("edge count " + std::to_string(m) + " impossible for a simple graph");

  std::vector<std::pair<int, int>> edges;
  for (long long k = 0; k < m; ++k) {
    if (!next_line(line)) throw ParseError("graph file ends after " + std::to_string(k) + " of " + std::to_string(m) + " edges");
    long long a = 0, b = 0;
    read_pair(line, a, b);
    if (a < 0 || b < 0 || a >= v || b >= v) fail("vertex out of range [0, " + std::to_string(v) + ")");
    edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  if (next_line(line)) fail("more edge lines than declared");
  try {
    return Graph(static_cast<int>(v), edges);
  } catch (const StructuralError& e) {
    throw ParseError(std::string("graph file: ") + e.what());
  }
}

}  // namespace ndist
