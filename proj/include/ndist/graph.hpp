#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "ndist/core.hpp"
#include "ndist/parallel.hpp"

namespace ndist {

using Vertex = int;

/// Finite undirected simple graph. Construction rejects loops, parallel
/// edges and out-of-range endpoints; connectivity is checked when distances
/// are computed.
class Graph {
 public:
  Graph() = default;
  Graph(int vertex_count, std::span<const std::pair<int, int>> edges);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::pair<int, int>> edges_;
};

/// Shortest-path lengths, row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {}

  int size() const { return n_; }
  int operator()(Vertex u, Vertex v) const { return d_[index(u, v)]; }
  int& at(Vertex u, Vertex v) { return d_[index(u, v)]; }

 private:
  std::size_t index(Vertex u, Vertex v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }
  int n_ = 0;
  std::vector<int> d_;
};

/// BFS from every vertex. StructuralError when g is disconnected.
DistanceMatrix bfs_all_pairs(const Graph& g);

struct GraphFermat {
  std::int64_t value = 0;
  std::vector<Vertex> fermat_set;  // all minimizers, ascending
};

/// Exhaustive minimization of sum_i dm(x_i, y) over all vertices y.
GraphFermat fermat_value_graph(const Graph& g, const DistanceMatrix& dm, std::span<const Vertex> tuple);

/// Vertices lying on shortest paths between each pair of u, v, w.
std::vector<Vertex> medians(const DistanceMatrix& dm, Vertex u, Vertex v, Vertex w);

/// The unique median; NotMedianError naming the triple otherwise.
Vertex median_vertex(const Graph& g, const DistanceMatrix& dm, Vertex u, Vertex v, Vertex w);

struct MedianCheck {
  bool is_median = true;
  /// First triple (in lexicographic order) without a unique median.
  std::array<Vertex, 3> offending{};
  std::size_t median_count = 0;
};

MedianCheck check_median_graph(const Graph& g, unsigned workers = default_workers());
bool is_median_graph(const Graph& g, unsigned workers = default_workers());

/// d_m(u, v, w) = min_y d(u,y) + d(v,y) + d(w,y). On median graphs
/// K* = 1/2, recorded only when g is verified median.
NDistance<Vertex, Rational> fermat3_graph_distance(const Graph& g);

/// Table of d_m over all ordered triples, indexed [u][v][w].
class Fermat3Table {
 public:
  Fermat3Table(const Graph& g, const DistanceMatrix& dm, unsigned workers = default_workers());
  int size() const { return n_; }
  std::int64_t operator()(Vertex u, Vertex v, Vertex w) const {
    return t_[(static_cast<std::size_t>(u) * n_ + static_cast<std::size_t>(v)) * n_ + static_cast<std::size_t>(w)];
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> t_;
};

struct GraphBestConstant {
  Rational best{0};
  /// (u, v, w, z) attaining `best`, first in lexicographic order.
  std::array<Vertex, 4> argmax{};
};

/// max over all (u, v, w, z) of d_m(u,v,w) / (d_m(z,v,w) + d_m(u,z,w) + d_m(u,v,z)).
GraphBestConstant graph_best_constant(const Fermat3Table& table, unsigned workers = default_workers());

// Generators.
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph grid_graph(int rows, int cols);
Graph hypercube_graph(int dim);
Graph complete_graph(int n);
Graph complete_bipartite_graph(int a, int b);
/// Uniform random recursive tree: vertex i > 0 attaches to a uniform earlier vertex.
Graph random_tree(int n, std::uint64_t seed);

inline constexpr int kMaxGraphVertices = 4096;

/// Text format: first line `V E`, then E lines `u v`, 0-indexed. Blank
/// lines and lines starting with '#' are skipped.
Graph parse_graph(std::istream& in, int max_vertices = kMaxGraphVertices);

}  // namespace ndist
