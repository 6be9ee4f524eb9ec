#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ndist/core.hpp"
#include "ndist/parallel.hpp"
#include "ndist/random.hpp"
#include "ndist/space.hpp"
#include "ndist/verify.hpp"

namespace ndist {

/// Local search around the most promising configurations: one element
/// (a point or the pivot) is perturbed per step, improvements are kept, and
/// the step halves after `patience` consecutive failures.
struct RefineSettings {
  int starts = 10;
  int steps = 200;
  int patience = 20;
  /// <= 0 means the space's own initial step.
  double initial_step = 0.0;
};

struct EstimateOptions {
  std::size_t budget = 10000;
  std::uint64_t seed = 1;
  RefineSettings refine{};
  double repeat_prob = 0.25;
  unsigned workers = default_workers();
};

template <class P, class V>
struct EstimateReport {
  std::string distance_name;
  int arity = 0;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  /// Largest ratio seen: a lower bound on the best constant.
  V best_ratio{};
  Config<P> witness;
  std::optional<TheoreticalK> theoretical_k;
  std::vector<SimplexViolation<P, V>> violations;

  V sampled_best{};                   // random phase only
  std::optional<V> registered_best;   // registered witnesses only
  V refined_best{};                   // after local search
};

inline constexpr std::size_t kMaxReportedViolations = 100;

namespace detail {

template <class P, class V>
struct Candidate {
  V ratio{};
  std::size_t order = 0;
  Config<P> config;
};

template <class P, class V>
bool better(const Candidate<P, V>& a, const Candidate<P, V>& b) {
  if (a.ratio != b.ratio) return a.ratio > b.ratio;
  return a.order < b.order;
}

template <class P, class V>
void keep_top(std::vector<Candidate<P, V>>& top, Candidate<P, V> c, std::size_t limit) {
  if (top.size() == limit && !better(c, top.back())) return;
  auto pos = std::lower_bound(top.begin(), top.end(), c, better<P, V>);
  top.insert(pos, std::move(c));
  if (top.size() > limit) top.pop_back();
}

/// Violation of the theoretical upper value, or nullopt.
template <class P, class V>
std::optional<SimplexViolation<P, V>> check_upper(const RatioSample<P, V>& s,
                                                  const std::optional<TheoreticalK>& tk) {
  if (!tk) return std::nullopt;
  SimplexViolation<P, V> v;
  v.config = s.config;
  v.k_tested = tk->hi;
  v.lhs = s.numerator;
  v.excess = excess_of(s.numerator, s.denominator, tk->hi, v.rhs);
  if (!exceeds(v.lhs, v.rhs, tk->hi_exclusive)) return std::nullopt;
  return v;
}

}  // namespace detail

/// Lower bound on the best constant: the maximum simplex ratio over the
/// registered witnesses, `budget` random configurations and a hill climb
/// from the best of those. Identical inputs give identical reports for any
/// worker count.
template <class P, class V>
EstimateReport<P, V> estimate_best_constant(const NDistance<P, V>& d, const Space<P>& space,
                                            const EstimateOptions& opt) {
  using Cand = detail::Candidate<P, V>;
  if (opt.budget < 1) throw ArgumentError("estimate budget must be at least 1");

  EstimateReport<P, V> report;
  report.distance_name = d.name;
  report.arity = d.arity;
  report.budget = opt.budget;
  report.seed = opt.seed;
  report.theoretical_k = d.theoretical_k;

  const auto limit = static_cast<std::size_t>(std::max(0, opt.refine.starts));
  const std::size_t n_witness = d.witnesses.size();
  std::vector<Cand> top;
  std::vector<SimplexViolation<P, V>> violations;

  auto note = [&](const RatioSample<P, V>& s, std::vector<SimplexViolation<P, V>>& out) {
    if (auto v = detail::check_upper(s, d.theoretical_k); v && out.size() < kMaxReportedViolations)
      out.push_back(std::move(*v));
  };

  // Registered witnesses come first in the tie-break order.
  std::optional<Cand> best;
  for (std::size_t w = 0; w < n_witness; ++w) {
    const auto s = simplex_ratio(d, d.witnesses[w]);
    note(s, violations);
    Cand c{s.ratio, w, s.config};
    if (!report.registered_best || s.ratio > *report.registered_best) report.registered_best = s.ratio;
    if (!best || detail::better(c, *best)) best = c;
    detail::keep_top(top, std::move(c), limit);
  }

  // Random phase, with one stream per sample index.
  const auto sampler = config_sampler(space, d.arity, opt.repeat_prob);
  struct Chunk {
    std::vector<Cand> top;
    std::optional<Cand> best;
    std::vector<SimplexViolation<P, V>> violations;
  };
  std::vector<Chunk> chunks(std::max(1u, opt.workers));
  parallel_chunks(opt.budget, opt.workers, [&](std::size_t begin, std::size_t end, unsigned w) {
    Chunk& ch = chunks[w];
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng = stream_rng(opt.seed, i, kSampleDomain);
      const auto s = simplex_ratio(d, sampler(rng));
      note(s, ch.violations);
      Cand c{s.ratio, n_witness + i, s.config};
      if (!ch.best || detail::better(c, *ch.best)) ch.best = c;
      detail::keep_top(ch.top, std::move(c), limit);
    }
  });
  std::optional<Cand> sampled;
  for (auto& ch : chunks) {
    if (ch.best && (!sampled || detail::better(*ch.best, *sampled))) sampled = ch.best;
    for (auto& c : ch.top) detail::keep_top(top, std::move(c), limit);
    for (auto& v : ch.violations)
      if (violations.size() < kMaxReportedViolations) violations.push_back(std::move(v));
  }
  report.sampled_best = sampled->ratio;
  if (!best || detail::better(*sampled, *best)) best = sampled;

  // Local refinement from the top candidates.
  const double step0 = opt.refine.initial_step > 0 ? opt.refine.initial_step : space.initial_step;
  std::vector<Cand> refined(top.size());
  std::vector<std::vector<SimplexViolation<P, V>>> refine_violations(top.size());
  parallel_chunks(top.size(), opt.workers, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t t = begin; t < end; ++t) {
      Rng rng = stream_rng(opt.seed, top[t].order, kRefineDomain);
      Cand cur = top[t];
      double step = step0;
      int failures = 0;
      std::uniform_int_distribution<int> pick(0, d.arity);
      for (int k = 0; k < opt.refine.steps; ++k) {
        Config<P> trial = cur.config;
        const int j = pick(rng);
        if (j == d.arity) {
          trial.pivot = space.perturb(trial.pivot, step, rng);
        } else {
          auto& p = trial.points[static_cast<std::size_t>(j)];
          p = space.perturb(p, step, rng);
        }
        const auto s = simplex_ratio(d, trial);
        note(s, refine_violations[t]);
        if (s.ratio > cur.ratio) {
          cur.ratio = s.ratio;
          cur.config = std::move(trial);
          failures = 0;
        } else if (++failures >= opt.refine.patience) {
          step *= 0.5;
          failures = 0;
        }
      }
      refined[t] = std::move(cur);
    }
  });
  report.refined_best = best->ratio;
  for (std::size_t t = 0; t < refined.size(); ++t) {
    if (refined[t].ratio > report.refined_best) report.refined_best = refined[t].ratio;
    if (refined[t].ratio > best->ratio) best = refined[t];
    for (auto& v : refine_violations[t])
      if (violations.size() < kMaxReportedViolations) violations.push_back(std::move(v));
  }

  report.best_ratio = best->ratio;
  report.witness = best->config;
  std::stable_sort(violations.begin(), violations.end(),
                   [](const auto& a, const auto& b) { return a.excess > b.excess; });
  report.violations = std::move(violations);
  return report;
}

}  // namespace ndist
