#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ndist/core.hpp"

namespace ndist {

using VecK = Eigen::VectorXd;

struct WeiszfeldResult {
  VecK minimizer;
  /// Sum of distances from the inputs to `minimizer`.
  double value = 0.0;
  std::size_t iterations = 0;
  /// Set only when the optimality certificate holds: a dual lower bound
  /// within a relative 1e-9 of `value`.
  bool converged = false;
  /// value minus the best dual lower bound found (0 for optimal anchors).
  double duality_gap = 0.0;
  /// Index of the first input point equal to the minimizer, if any.
  std::optional<std::size_t> anchor;
  /// Norm of the (sub)gradient at the minimizer, relative to the total weight.
  double gradient_norm = 0.0;
};

inline constexpr double kWeiszfeldTol = 1e-10;
inline constexpr std::size_t kWeiszfeldMaxIter = 10000;

/// Geometric median of `points` (sum of Euclidean distances minimized).
/// Repeated inputs are merged into weights and each distinct input is first
/// tested as an optimal anchor; otherwise reweighting iterations start from
/// the centroid, with Newton steps taken whenever they decrease the sum
/// further. Throws ArgumentError on empty input, mixed dimensions or tol <= 0.
WeiszfeldResult weiszfeld(std::span<const VecK> points, double tol = kWeiszfeldTol,
                          std::size_t max_iter = kWeiszfeldMaxIter);

double sum_of_distances(std::span<const VecK> points, const VecK& y);

/// min_y sum_i |x_i - y| on R^k. K* lies in [1/(n-1), (4n-4)/(3n^2-4n)].
/// A solver run without certificate raises EvaluationError.
NDistance<VecK, double> fermat_distance_euclidean(int n, int k);

VecK vec2(double x, double y);

}  // namespace ndist
