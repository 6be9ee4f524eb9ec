#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ndist/core.hpp"
#include "ndist/elementary.hpp"
#include "ndist/fermat.hpp"
#include "ndist/geometry.hpp"
#include "ndist/graph.hpp"
#include "ndist/space.hpp"

namespace ndist {

/// A distance together with the space it is sampled from.
template <class P, class V>
struct Registered {
  NDistance<P, V> distance;
  Space<P> space;
};

using AnyDistance = std::variant<Registered<Label, Rational>, Registered<double, double>, Registered<Point2, double>,
                                 Registered<Rational, Rational>, Registered<ExactPoint2, Rational>,
                                 Registered<Point2, Rational>, Registered<VecK, double>,
                                 Registered<Vertex, Rational>>;

struct DistanceParams {
  /// Empty selects the distance's default space. Recognized: labels, real,
  /// plane, rational, lattice (exact integer points), rk, vertices.
  std::string space;
  int dim = 2;  // for rk
  /// Graph for fermat_graph3; the 3x3 grid when unset.
  std::shared_ptr<const Graph> graph;
};

/// Builds a registered distance by name. Combinators nest:
/// add(A,B), scale(A,lambda), bound(A), hemi(A).
/// ConfigError on unknown names, bad arity or inconsistent parameters.
AnyDistance make_distance(const std::string& name, int n, const DistanceParams& params = {});

/// Base names, without combinators.
const std::vector<std::string>& registered_names();

/// Smallest arity each base distance accepts (fermat_graph3 accepts only 3).
int min_arity(const std::string& base_name);

// Default sampling spaces.
Space<Label> label_space(int universe = 10);
Space<double> real_space();
Space<Point2> plane_space();
Space<Rational> integer_rational_space(int lo = 0, int hi = 9);
Space<ExactPoint2> lattice_space(int lo = 0, int hi = 9);
Space<VecK> cube_space(int dim);
Space<Vertex> vertex_space(std::shared_ptr<const Graph> g);

}  // namespace ndist
