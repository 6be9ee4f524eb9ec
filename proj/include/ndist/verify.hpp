#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ndist/core.hpp"
#include "ndist/parallel.hpp"
#include "ndist/random.hpp"
#include "ndist/space.hpp"

namespace ndist {

template <class P, class V>
struct SimplexViolation {
  Config<P> config;
  Rational k_tested{1};
  V lhs{};
  V rhs{};  // k_tested * denominator
  double excess = 0.0;
};

enum class AxiomCondition { simplex, symmetry, identity };

inline const char* to_string(AxiomCondition c) {
  switch (c) {
    case AxiomCondition::simplex: return "simplex";
    case AxiomCondition::symmetry: return "symmetry";
    case AxiomCondition::identity: return "identity";
  }
  return "?";
}

template <class P>
struct AxiomFailure {
  AxiomCondition condition;
  std::size_t sample_index = 0;
  Config<P> config;
  std::string detail;
};

template <class P>
struct AxiomReport {
  std::size_t samples = 0;
  std::size_t simplex_failures = 0;
  std::size_t symmetry_failures = 0;
  std::size_t identity_failures = 0;
  std::vector<AxiomFailure<P>> counterexamples;  // first few, in sample order

  bool passed() const { return simplex_failures + symmetry_failures + identity_failures == 0; }
};

inline constexpr std::size_t kMaxCounterexamples = 20;

namespace detail {

template <class V>
bool values_match(const V& a, const V& b) {
  if constexpr (ValueTraits<V>::exact) {
    return a == b;
  } else {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  }
}

template <class P>
bool is_constant(const std::vector<P>& pts) {
  return std::all_of(pts.begin(), pts.end(), [&](const P& p) { return p == pts.front(); });
}

/// lhs - k * den, as a double; positive means the inequality fails.
template <class V>
double excess_of(const V& lhs, const V& den, const Rational& k, V& rhs) {
  if constexpr (ValueTraits<V>::exact) {
    rhs = V(k) * den;
    return to_double(lhs - rhs);
  } else {
    rhs = to_double(k) * den;
    return lhs - rhs;
  }
}

template <class V>
bool exceeds(const V& lhs, const V& rhs, bool strict) {
  if constexpr (ValueTraits<V>::exact) {
    return strict ? (lhs > 0 && lhs >= rhs) : lhs > rhs;
  } else {
    (void)strict;
    return lhs - rhs > kFloatTolerance * std::max(1.0, std::abs(lhs));
  }
}

}  // namespace detail

/// Samples configurations and checks symmetry on a random permutation, the
/// identity condition on the constant tuple and on the sampled tuple, and
/// the simplex inequality with K = 1. Failures are returned, not thrown.
template <class P, class V>
AxiomReport<P> verify_axioms(const NDistance<P, V>& d, const ConfigSampler<P>& sampler,
                             std::size_t samples, std::uint64_t seed,
                             unsigned workers = default_workers()) {
  using T = ValueTraits<V>;
  if (samples < 1) throw ArgumentError("verify_axioms needs at least one sample");

  struct Chunk {
    std::size_t simplex = 0, symmetry = 0, identity = 0;
    std::vector<AxiomFailure<P>> failures;
  };
  std::vector<Chunk> chunks(std::max(1u, workers));

  parallel_chunks(samples, workers, [&](std::size_t begin, std::size_t end, unsigned w) {
    Chunk& out = chunks[w];
    auto fail = [&](AxiomCondition cond, std::size_t idx, const Config<P>& c, std::string why) {
      if (out.failures.size() < kMaxCounterexamples) out.failures.push_back({cond, idx, c, std::move(why)});
    };
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng = stream_rng(seed, i, kSampleDomain);
      const Config<P> c = sampler(rng);
      const V value = d.eval(c.points);

      std::vector<P> permuted = c.points;
      std::shuffle(permuted.begin(), permuted.end(), rng);
      const V value_perm = d.eval(permuted);
      if (!detail::values_match(value, value_perm)) {
        ++out.symmetry;
        fail(AxiomCondition::symmetry, i, c,
             "d(x) = " + T::format(value) + " but permuted d = " + T::format(value_perm));
      }

      const std::vector<P> constant(c.points.size(), c.points.front());
      const V value_const = d.eval(constant);
      const bool nonconstant = !detail::is_constant(c.points);
      if (!T::is_zero(value_const)) {
        ++out.identity;
        fail(AxiomCondition::identity, i, c,
             "constant tuple evaluates to " + T::format(value_const));
      } else if (!T::finite_nonnegative(value)) {
        ++out.identity;
        fail(AxiomCondition::identity, i, c, "invalid value " + T::format(value));
      } else if (nonconstant == T::is_zero(value)) {
        ++out.identity;
        fail(AxiomCondition::identity, i, c,
             std::string(nonconstant ? "nonconstant" : "constant") + " tuple evaluates to " +
                 T::format(value));
      }

      try {
        const auto s = simplex_ratio(d, c);
        V rhs{};
        detail::excess_of(s.numerator, s.denominator, Rational(1), rhs);
        if (detail::exceeds(s.numerator, rhs, false)) {
          ++out.simplex;
          fail(AxiomCondition::simplex, i, c,
               "d = " + T::format(s.numerator) + " > sum = " + T::format(s.denominator));
        }
      } catch (const AxiomViolation& e) {
        ++out.simplex;
        fail(AxiomCondition::simplex, i, c, e.what());
      }
    }
  });

  AxiomReport<P> report;
  report.samples = samples;
  for (auto& ch : chunks) {
    report.simplex_failures += ch.simplex;
    report.symmetry_failures += ch.symmetry;
    report.identity_failures += ch.identity;
    for (auto& f : ch.failures)
      if (report.counterexamples.size() < kMaxCounterexamples) report.counterexamples.push_back(std::move(f));
  }
  return report;
}

/// Sampled (plus injected) configurations whose ratio exceeds k, sorted by
/// excess, largest first. With `strict`, exact-valued distances also report
/// ratios equal to k (for constants whose upper end is not attained).
template <class P, class V>
std::vector<SimplexViolation<P, V>> verify_simplex(
    const NDistance<P, V>& d, const Rational& k, const ConfigSampler<P>& sampler,
    std::size_t samples, std::uint64_t seed, const std::vector<Config<P>>& injected = {},
    bool strict = false, unsigned workers = default_workers()) {
  if (!(k > 0 && k <= 1)) throw ArgumentError("simplex constant must lie in (0, 1]");

  auto check = [&](const Config<P>& c, std::vector<SimplexViolation<P, V>>& out) {
    SimplexViolation<P, V> v;
    v.config = c;
    v.k_tested = k;
    try {
      const auto s = simplex_ratio(d, c);
      v.lhs = s.numerator;
      v.excess = detail::excess_of(s.numerator, s.denominator, k, v.rhs);
      if (detail::exceeds(v.lhs, v.rhs, strict)) out.push_back(std::move(v));
    } catch (const AxiomViolation&) {
      v.lhs = d.eval(c.points);
      v.rhs = ValueTraits<V>::zero();
      v.excess = ValueTraits<V>::to_double(v.lhs);
      out.push_back(std::move(v));
    }
  };

  std::vector<SimplexViolation<P, V>> found;
  for (const auto& c : injected) check(c, found);

  std::vector<std::vector<SimplexViolation<P, V>>> chunks(std::max(1u, workers));
  parallel_chunks(samples, workers, [&](std::size_t begin, std::size_t end, unsigned w) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng = stream_rng(seed, i, kSampleDomain);
      check(sampler(rng), chunks[w]);
    }
  });
  for (auto& ch : chunks)
    for (auto& v : ch) found.push_back(std::move(v));

  std::stable_sort(found.begin(), found.end(),
                   [](const auto& a, const auto& b) { return a.excess > b.excess; });
  return found;
}

}  // namespace ndist
