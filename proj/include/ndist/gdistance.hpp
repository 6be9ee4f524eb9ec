#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ndist/core.hpp"
#include "ndist/random.hpp"
#include "ndist/space.hpp"

namespace ndist {

struct GProperties {
  bool symmetric = true;
  bool positively_homogeneous = false;
  bool superadditive = false;
  bool additive = false;
};

/// Symmetric aggregator g : R^n_+ -> R_+ replacing the sum in the simplex
/// inequality.
struct GFunction {
  std::string name;
  int arity = 2;
  std::function<double(std::span<const double>)> eval;
  GProperties declared;

  double operator()(std::span<const double> r) const { return eval(r); }
};

/// g(r) = lambda * sum r_i. ArgumentError when lambda < 0.
GFunction make_weighted_sum_g(double lambda, int n);
/// g(r) = max r_i (homogeneous, not superadditive).
GFunction make_max_g(int n);
/// g(r) = scale * min r_i (homogeneous and superadditive).
GFunction make_scaled_min_g(int n, double scale);

using RVectorSampler = std::function<std::vector<double>(Rng&)>;

/// Componentwise mixture of Uniform(0,1), Exp(1) and exact zeros; one
/// vector in four is sparse (each entry zero with probability 3/4).
RVectorSampler r_vector_sampler(int n);

struct PropertyFailure {
  std::vector<std::vector<double>> inputs;
  std::string detail;
};

struct PropertyReport {
  std::string property;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t failures = 0;
  std::vector<PropertyFailure> counterexamples;  // first few

  bool passed() const { return failures == 0; }
};

inline constexpr double kGTolerance = 1e-9;

PropertyReport check_positively_homogeneous(const GFunction& g, const RVectorSampler& sampler, std::size_t samples,
                                            std::uint64_t seed = 1);
PropertyReport check_superadditive(const GFunction& g, const RVectorSampler& sampler, std::size_t samples,
                                   std::uint64_t seed = 1);

struct AdditiveForm {
  bool additive = false;
  /// g(e_1), the only possible coefficient.
  double lambda = 0.0;
  PropertyReport report;
};

AdditiveForm check_additive_form(const GFunction& g, const RVectorSampler& sampler, std::size_t samples,
                                 std::uint64_t seed = 1);

/// Midpoint concavity. ConfigError unless g is declared positively
/// homogeneous and superadditive; a failure refutes a declared property.
PropertyReport check_concavity(const GFunction& g, const RVectorSampler& sampler, std::size_t samples,
                               std::uint64_t seed = 1);

namespace detail {
inline void record(PropertyReport& rep, std::vector<std::vector<double>> inputs, std::string why) {
  ++rep.failures;
  if (rep.counterexamples.size() < 20) rep.counterexamples.push_back({std::move(inputs), std::move(why)});
}

inline bool g_close(double a, double b) { return std::abs(a - b) <= kGTolerance * std::max({1.0, std::abs(a), std::abs(b)}); }
}  // namespace detail

struct GDistanceReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t simplex_failures = 0;
  std::size_t symmetry_failures = 0;
  std::size_t identity_failures = 0;
  std::vector<std::string> counterexamples;

  bool passed() const { return simplex_failures + symmetry_failures + identity_failures == 0; }
};

/// Samples d(x) <= g(d(x)_1^z, ..., d(x)_n^z), symmetry under a random
/// permutation and the identity condition.
template <class P, class V>
GDistanceReport is_g_distance(const NDistance<P, V>& d, const GFunction& g, const ConfigSampler<P>& sampler,
                              std::size_t samples, std::uint64_t seed,
                              const std::vector<Config<P>>& injected = {}) {
  using T = ValueTraits<V>;
  if (g.arity != d.arity) {
    throw ConfigError("g has arity " + std::to_string(g.arity) + ", " + d.name + " has arity " +
                      std::to_string(d.arity));
  }
  GDistanceReport rep;
  rep.samples = samples;
  rep.seed = seed;
  auto note = [&](std::size_t& counter, const std::string& why) {
    ++counter;
    if (rep.counterexamples.size() < 20) rep.counterexamples.push_back(why);
  };
  auto check = [&](const Config<P>& c, Rng& rng) {
    const V value = d.eval(c.points);
    std::vector<double> replaced;
    std::vector<P> pts = c.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      pts[i] = c.pivot;
      replaced.push_back(T::to_double(d.eval(pts)));
      pts[i] = c.points[i];
    }
    const double lhs = T::to_double(value);
    const double rhs = g(replaced);
    if (lhs - rhs > kGTolerance * std::max(1.0, std::abs(rhs))) {
      note(rep.simplex_failures, d.name + ": d = " + T::format(value) + " > g = " + ValueTraits<double>::format(rhs));
    }
    std::shuffle(pts.begin(), pts.end(), rng);
    const V perm = d.eval(pts);
    if (!detail::g_close(lhs, T::to_double(perm))) note(rep.symmetry_failures, d.name + ": not symmetric");
    const bool constant =
        std::all_of(c.points.begin(), c.points.end(), [&](const P& p) { return p == c.points.front(); });
    if (constant != T::is_zero(value) || !T::finite_nonnegative(value)) {
      note(rep.identity_failures, d.name + ": identity condition fails, value " + T::format(value));
    }
  };
  for (std::size_t k = 0; k < injected.size(); ++k) {
    Rng rng = stream_rng(seed, k, kPermutationDomain);
    check(injected[k], rng);
  }
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng = stream_rng(seed, i, kSampleDomain);
    check(sampler(rng), rng);
  }
  return rep;
}

/// x -> d(x) / (1 + d(x)). Requires g = lambda * sum with lambda >= 1
/// (checked by sampling); ConfigError otherwise.
template <class P, class V>
NDistance<P, V> bound_g_distance(const NDistance<P, V>& d, const GFunction& g, std::size_t samples = 1000,
                                 std::uint64_t seed = 1) {
  if (g.arity != d.arity) throw ConfigError("g and d have different arity");
  const auto form = check_additive_form(g, r_vector_sampler(g.arity), samples, seed);
  if (!form.additive) throw ConfigError(g.name + " is not of the form lambda * sum");
  if (form.lambda < 1.0) {
    throw ConfigError(g.name + " has lambda = " + ValueTraits<double>::format(form.lambda) + " < 1");
  }
  NDistance<P, V> out;
  out.name = "bound(" + d.name + ")";
  out.arity = d.arity;
  out.space_tag = d.space_tag;
  out.eval = [f = d.eval](std::span<const P> x) {
    const V v = f(x);
    return v / (V(1) + v);
  };
  out.witnesses = d.witnesses;
  return out;
}

}  // namespace ndist
