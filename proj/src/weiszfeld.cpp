#include "ndist/fermat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "ndist/elementary.hpp"

namespace ndist {

namespace {

// Relative duality gap accepted as a certificate of optimality.
constexpr double kCertificate = 1e-9;
// Gap at which iteration stops early.
constexpr double kTargetGap = 1e-13;

struct Weighted {
  VecK x;
  double w = 0.0;
  std::size_t first_index = 0;
};

std::vector<Weighted> merge_duplicates(std::span<const VecK> points) {
  std::vector<Weighted> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Weighted& a) { return a.x == points[i]; });
    if (it == out.end())
      out.push_back({points[i], 1.0, i});
    else
      it->w += 1.0;
  }
  return out;
}

double weighted_sum(const std::vector<Weighted>& pts, const VecK& y) {
  double f = 0.0;
  for (const auto& p : pts) f += p.w * (p.x - y).norm();
  return f;
}

// Coordinates relative to one input (the base). Iterating on the offset
// from the nearest input keeps y - x_j exact even when the minimizer sits
// within a few ulps of x_j, where absolute coordinates lose every digit of
// that difference.
struct Frame {
  const std::vector<Weighted>* pts = nullptr;
  std::size_t base = 0;
  std::vector<VecK> rel;  // x_i - x_base

  Frame(const std::vector<Weighted>& p, std::size_t b) : pts(&p) { rebase_to(b); }

  void rebase_to(std::size_t b) {
    base = b;
    rel.clear();
    for (const auto& q : *pts) rel.push_back(q.x - (*pts)[b].x);
  }

  // Offset of input j, in this frame.
  const VecK& input(std::size_t j) const { return rel[j]; }

  std::size_t nearest(const VecK& d) const {
    std::size_t j = 0;
    double best = (d - rel[0]).norm();
    for (std::size_t i = 1; i < rel.size(); ++i) {
      const double r = (d - rel[i]).norm();
      if (r < best) {
        best = r;
        j = i;
      }
    }
    return j;
  }

  double value(const VecK& d) const {
    double f = 0.0;
    for (std::size_t i = 0; i < rel.size(); ++i) f += (*pts)[i].w * (d - rel[i]).norm();
    return f;
  }

  VecK gradient(const VecK& d) const {
    VecK g = VecK::Zero(d.size());
    for (std::size_t i = 0; i < rel.size(); ++i) {
      const VecK diff = d - rel[i];
      const double r = diff.norm();
      if (r > 0) g += (*pts)[i].w * diff / r;
    }
    return g;
  }

  // Lower bound on the minimum from the dual problem
  //   max { sum_i w_i <u_i, y - x_i> : |u_i| <= 1, sum_i w_i u_i = 0 }.
  // The u_i are the unit vectors from the x_i to y, except at the nearest
  // input, whose u_j is solved for so that the weighted sum vanishes; all u
  // are then shrunk into the unit ball.
  double dual_bound(const VecK& d) const {
    const std::size_t j = nearest(d);
    VecK s = VecK::Zero(d.size());
    double bound = 0.0;
    for (std::size_t i = 0; i < rel.size(); ++i) {
      const VecK diff = d - rel[i];
      const double r = diff.norm();
      if (i == j || r == 0.0) continue;
      s += (*pts)[i].w * diff / r;
      bound += (*pts)[i].w * r;
    }
    const VecK uj = -s / (*pts)[j].w;
    bound += (*pts)[j].w * uj.dot(d - rel[j]);
    return bound / std::max(1.0, uj.norm());
  }
};

// Sum of the unit vectors from x_j towards the other points, weighted.
VecK resultant_at(const std::vector<Weighted>& pts, std::size_t j) {
  VecK r = VecK::Zero(pts[j].x.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i == j) continue;
    const VecK diff = pts[i].x - pts[j].x;
    r += pts[i].w * diff / diff.norm();
  }
  return r;
}

std::string describe(std::span<const VecK> points) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (std::size_t i = 0; i < points.size(); ++i) {
    os << (i ? ", " : "") << "(";
    for (Eigen::Index c = 0; c < points[i].size(); ++c) os << (c ? ", " : "") << points[i](c);
    os << ")";
  }
  os << "]";
  return os.str();
}

}  // namespace

double sum_of_distances(std::span<const VecK> points, const VecK& y) {
  double f = 0.0;
  for (const auto& p : points) f += (p - y).norm();
  return f;
}

VecK vec2(double x, double y) {
  VecK v(2);
  v << x, y;
  return v;
}

WeiszfeldResult weiszfeld(std::span<const VecK> points, double tol, std::size_t max_iter) {
  if (points.empty()) throw ArgumentError("weiszfeld needs at least one point");
  if (!(tol > 0)) throw ArgumentError("weiszfeld tolerance must be positive");
  const auto dim = points.front().size();
  if (dim < 1) throw ArgumentError("weiszfeld points must have dimension >= 1");
  for (const auto& p : points) {
    if (p.size() != dim) throw ArgumentError("weiszfeld points have mixed dimensions");
    if (!p.allFinite()) throw ArgumentError("weiszfeld point has non-finite coordinate");
  }

  const auto pts = merge_duplicates(points);
  double total_w = 0.0;
  for (const auto& p : pts) total_w += p.w;

  WeiszfeldResult res;
  auto finish_at_anchor = [&](std::size_t j, double grad_norm) {
    res.minimizer = pts[j].x;
    res.value = weighted_sum(pts, pts[j].x);
    res.converged = true;
    res.anchor = pts[j].first_index;
    res.gradient_norm = grad_norm;
    return res;
  };
  if (pts.size() == 1) return finish_at_anchor(0, 0.0);

  double diam = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) diam = std::max(diam, (pts[i].x - pts[j].x).norm());

  // Anchor optimality: x_j minimizes iff |R_j| <= w_j.
  std::vector<VecK> resultants;
  std::optional<std::size_t> best_anchor;
  double best_anchor_value = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    resultants.push_back(resultant_at(pts, j));
    const double excess = resultants.back().norm() - pts[j].w;
    if (excess <= 1e-12 * total_w) {
      const double f = weighted_sum(pts, pts[j].x);
      if (!best_anchor || f < best_anchor_value) {
        best_anchor = j;
        best_anchor_value = f;
      }
    }
  }
  if (best_anchor) {
    const double slack = std::max(0.0, resultants[*best_anchor].norm() - pts[*best_anchor].w);
    return finish_at_anchor(*best_anchor, slack / total_w);
  }

  // The minimizer is interior to no anchor: iterate from the centroid.
  VecK centroid = VecK::Zero(dim);
  for (const auto& p : pts) centroid += p.w * p.x;
  centroid /= total_w;
  Frame frame(pts, 0);
  VecK y = centroid - pts[0].x;  // offset from the current base
  frame.rebase_to(frame.nearest(y));
  y = centroid - pts[frame.base].x;
  double f = frame.value(y);
  const double near = 1e-12 * std::max(1.0, diam);
  const double step_tol = tol * std::max(1.0, diam);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(dim, dim);

  double best_gap = std::numeric_limits<double>::infinity();
  int stale = 0;
  // Every dual bound is valid, so take the best one from y and from the
  // inputs; the best primal point may itself be an input. Returns true when
  // iteration should stop.
  auto certify = [&](double step) {
    double lower = frame.dual_bound(y);
    std::optional<std::size_t> better_anchor;
    double best_f = f;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      lower = std::max(lower, frame.dual_bound(frame.input(j)));
      const double fj = frame.value(frame.input(j));
      if (fj < best_f) {
        best_f = fj;
        better_anchor = j;
      }
    }
    if (better_anchor) {
      y = frame.input(*better_anchor);
      f = best_f;
    }
    const double gap = std::max(0.0, f - lower);
    // Keep polishing while the gap still shrinks; certify at the end.
    stale = gap < best_gap ? 0 : stale + 1;
    best_gap = std::min(best_gap, gap);
    res.duality_gap = gap;
    res.converged = gap <= kCertificate * f;
    return gap <= kTargetGap * f || step == 0.0 || (res.converged && stale >= 5);
  };

  for (std::size_t it = 1; it <= max_iter; ++it) {
    res.iterations = it;
    const std::size_t closest = frame.nearest(y);
    if (closest != frame.base) {
      y -= frame.input(closest);
      frame.rebase_to(closest);
    }

    // Landing on an input: stop if it is optimal to within rounding,
    // otherwise leave along the descent direction R_j / |R_j|.
    if (y.norm() <= near) {
      certify(step_tol);
      if (res.converged) break;
      if (y.norm() > near) continue;  // certify moved to a better input
      const VecK dir = resultants[frame.base] / resultants[frame.base].norm();
      const double f_anchor = frame.value(VecK::Zero(dim));
      double delta = 1e-3 * diam;
      while (frame.value(delta * dir) >= f_anchor && delta > 1e-15 * diam) delta *= 0.5;
      y = delta * dir;
      f = frame.value(y);
      // The minimizer is within `near` of this input: no room left to move.
      if (delta <= near || f >= f_anchor) {
        if (f >= f_anchor) {
          // f is flat to rounding here. The sign of the directional
          // derivative still locates the minimum along dir, where the dual
          // bound is tight.
          double lo = 0.0, hi = 1e-3 * diam;
          y = VecK::Zero(dim);
          f = f_anchor;
          if (frame.gradient(hi * dir).dot(dir) > 0.0) {
            for (int k = 0; k < 200 && hi - lo > 0.0; ++k) {
              const double mid = 0.5 * (lo + hi);
              if (mid <= lo || mid >= hi) break;
              (frame.gradient(mid * dir).dot(dir) < 0.0 ? lo : hi) = mid;
            }
            y = hi * dir;
            f = frame.value(y);
          }
        }
        if (certify(0.0)) break;
      }
      continue;
    }

    // Weiszfeld step.
    VecK num = VecK::Zero(dim);
    double den = 0.0;
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(dim, dim);
    VecK g = VecK::Zero(dim);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const VecK diff = y - frame.input(i);
      const double r = diff.norm();
      const double w = pts[i].w;
      num += (w / r) * frame.input(i);
      den += w / r;
      const VecK u = diff / r;
      g += w * u;
      hess += (w / r) * (eye - u * u.transpose());
    }
    VecK next = num / den;
    double f_next = frame.value(next);

    // Damped Newton step, kept when it does better. Nearly collinear inputs
    // leave the sum almost flat along one axis, where plain reweighting
    // crawls and the full Newton step overshoots.
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
      const VecK newton_dir = -ldlt.solve(g);
      if (newton_dir.allFinite()) {
        double t = 1.0;
        for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
          const VecK cand = y + t * newton_dir;
          const double fc = frame.value(cand);
          if ((halving == 0 || fc < f) && fc < f_next) {
            next = cand;
            f_next = fc;
          }
          if (fc < f) break;
        }
      }
    }

    // Close to the optimum f is flat to rounding, so a step that leaves f
    // unchanged within a few ulps is still taken when it shrinks the
    // gradient. Rejected candidates are retried at half length.
    const double g_norm = g.norm();
    auto acceptable = [&](const VecK& c, double fc) {
      return fc <= f || (fc <= f * (1.0 + 1e-14) && frame.gradient(c).norm() < g_norm);
    };
    const VecK dir = next - y;
    double step = 0.0;
    double t = 1.0;
    for (int halving = 0; halving < 8; ++halving, t *= 0.5) {
      const VecK cand = y + t * dir;
      const double fc = halving == 0 ? f_next : frame.value(cand);
      if (acceptable(cand, fc)) {
        // Steps below the spacing of doubles leave y where it is.
        step = cand == y ? 0.0 : t * dir.norm();
        y = cand;
        f = fc;
        break;
      }
    }
    if (step <= step_tol && certify(step)) break;
  }
  res.gradient_norm = frame.gradient(y).norm() / total_w;
  res.value = frame.value(y);
  res.minimizer = pts[frame.base].x + y;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (y == frame.input(j)) {
      res.minimizer = pts[j].x;
      res.anchor = pts[j].first_index;
      break;
    }
  }
  return res;
}
NDistance<VecK, double> fermat_distance_euclidean(int n, int k) {
  detail::require_arity(n, 2, "fermat_euclidean");
  if (k < 1) throw ConfigError("fermat_euclidean needs dimension k >= 1, got " + std::to_string(k));
  NDistance<VecK, double> d;
  d.name = "fermat_euclidean";
  d.arity = n;
  d.space_tag = "R" + std::to_string(k);
  d.eval = [](std::span<const VecK> x) {
    const auto r = weiszfeld(x);
    if (!r.converged) {
      throw EvaluationError("fermat_euclidean: solver did not certify a minimum for " + describe(x) +
                            " (duality gap " + ValueTraits<double>::format(r.duality_gap) + ")");
    }
    return r.value;
  };
  d.theoretical_k = TheoreticalK::interval(Rational(1, n - 1), Rational(4 * n - 4, 3 * n * n - 4 * n));
  // x_1 = ... = x_{n-1} = z, x_n elsewhere
  VecK a = VecK::Zero(k);
  VecK b = VecK::Zero(k);
  b(0) = 1.0;
  d.witnesses.push_back(detail::all_but_last<VecK>(n, a, b));
  return d;
}

}  // namespace ndist
