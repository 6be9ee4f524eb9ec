#include "ndist/gdistance.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace ndist {

namespace {

void require_g_arity(int n) {
  if (n < 2) throw ArgumentError("g needs arity n >= 2, got " + std::to_string(n));
}

std::string fmt(double v) { return ValueTraits<double>::format(v); }

std::vector<double> unit(int n, int i) {
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  e[static_cast<std::size_t>(i)] = 1.0;
  return e;
}

std::vector<double> add(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

PropertyReport start(const char* property, std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw ArgumentError("property checks need at least one sample");
  PropertyReport rep;
  rep.property = property;
  rep.samples = samples;
  rep.seed = seed;
  return rep;
}

// Pairs of unit vectors first: sparse inputs are where sum-like behaviour
// usually breaks.
std::vector<std::pair<std::vector<double>, std::vector<double>>> basis_pairs(int n) {
  std::vector<std::pair<std::vector<double>, std::vector<double>>> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.emplace_back(unit(n, i), unit(n, j));
  return out;
}

}  // namespace

GFunction make_weighted_sum_g(double lambda, int n) {
  require_g_arity(n);
  if (!(lambda >= 0) || !std::isfinite(lambda)) throw ArgumentError("weighted sum needs lambda >= 0, got " + fmt(lambda));
  GFunction g;
  g.name = "weighted_sum(" + fmt(lambda) + ")";
  g.arity = n;
  g.eval = [lambda](std::span<const double> r) { return lambda * std::accumulate(r.begin(), r.end(), 0.0); };
  g.declared = {true, true, true, true};
  return g;
}

GFunction make_max_g(int n) {
  require_g_arity(n);
  GFunction g;
  g.name = "max";
  g.arity = n;
  g.eval = [](std::span<const double> r) { return *std::max_element(r.begin(), r.end()); };
  g.declared = {true, true, false, false};
  return g;
}

GFunction make_scaled_min_g(int n, double scale) {
  require_g_arity(n);
  if (!(scale >= 0)) throw ArgumentError("scaled min needs scale >= 0");
  GFunction g;
  g.name = "scaled_min(" + fmt(scale) + ")";
  g.arity = n;
  g.eval = [scale](std::span<const double> r) { return scale * *std::min_element(r.begin(), r.end()); };
  g.declared = {true, true, true, false};
  return g;
}

RVectorSampler r_vector_sampler(int n) {
  require_g_arity(n);
  return [n](Rng& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::exponential_distribution<double> exp1(1.0);
    const bool sparse = u01(rng) < 0.25;
    std::vector<double> r(static_cast<std::size_t>(n));
    for (auto& x : r) {
      const double pick = u01(rng);
      if (sparse && pick < 0.75) {
        x = 0.0;
      } else if (pick < (sparse ? 0.875 : 0.5)) {
        x = u01(rng);
      } else {
        x = exp1(rng);
      }
    }
    return r;
  };
}

PropertyReport check_positively_homogeneous(const GFunction& g, const RVectorSampler& sampler, std::size_t samples,
                                            std::uint64_t seed) {
  auto rep = start("positively_homogeneous", samples, seed);
  static constexpr double kFactors[] = {0.5, 2.0, 10.0};
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng = stream_rng(seed, i, kSampleDomain);
    const auto r = sampler(rng);
    std::uniform_real_distribution<double> lam_dist(0.01, 100.0);
    const double drawn = lam_dist(rng);
    const double base = g(r);
    for (double lam : {kFactors[i % 3], drawn}) {
      std::vector<double> scaled(r);
      for (auto& x : scaled) x *= lam;
      const double lhs = g(scaled);
      if (!detail::g_close(lhs, lam * base)) {
        detail::record(rep, {r}, "g(" + fmt(lam) + " r) = " + fmt(lhs) + " but " + fmt(lam) + " g(r) = " + fmt(lam * base));
        break;
      }
    }
  }
  return rep;
}

PropertyReport check_superadditive(const GFunction& g, const RVectorSampler& sampler, std::size_t samples,
                                   std::uint64_t seed) {
  auto rep = start("superadditive", samples, seed);
  auto test = [&](const std::vector<double>& r, const std::vector<double>& s) {
    const double lhs = g(add(r, s));
    const double rhs = g(r) + g(s);
    if (rhs - lhs > kGTolerance * std::max(1.0, std::abs(rhs))) {
      detail::record(rep, {r, s}, "g(r + s) = " + fmt(lhs) + " < g(r) + g(s) = " + fmt(rhs));
    }
  };
  for (const auto& [r, s] : basis_pairs(g.arity)) test(r, s);
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng = stream_rng(seed, i, kSampleDomain);
    const auto r = sampler(rng);
    test(r, sampler(rng));
  }
  return rep;
}

AdditiveForm check_additive_form(const GFunction& g, const RVectorSampler& sampler, std::size_t samples,
                                 std::uint64_t seed) {
  AdditiveForm out;
  out.report = start("additive_form", samples, seed);
  out.lambda = g(unit(g.arity, 0));
  auto test = [&](const std::vector<double>& r) {
    const double expected = out.lambda * std::accumulate(r.begin(), r.end(), 0.0);
    const double got = g(r);
    if (!detail::g_close(got, expected)) {
      detail::record(out.report, {r}, "g(r) = " + fmt(got) + " but lambda * sum = " + fmt(expected));
    }
  };
  for (int i = 0; i < g.arity; ++i) test(unit(g.arity, i));
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng = stream_rng(seed, i, kSampleDomain);
    test(sampler(rng));
  }
  out.additive = out.report.passed() && out.lambda >= 0;
  return out;
}

PropertyReport check_concavity(const GFunction& g, const RVectorSampler& sampler, std::size_t samples,
                               std::uint64_t seed) {
  if (!g.declared.positively_homogeneous || !g.declared.superadditive) {
    throw ConfigError("concavity check needs " + g.name + " declared positively homogeneous and superadditive");
  }
  auto rep = start("concave", samples, seed);
  auto test = [&](const std::vector<double>& r, const std::vector<double>& s) {
    std::vector<double> mid = add(r, s);
    for (auto& x : mid) x *= 0.5;
    const double lhs = g(mid);
    const double rhs = 0.5 * (g(r) + g(s));
    if (rhs - lhs > kGTolerance * std::max(1.0, std::abs(rhs))) {
      detail::record(rep, {r, s},
                     "g((r + s)/2) = " + fmt(lhs) + " < (g(r) + g(s))/2 = " + fmt(rhs) +
                         "; refutes a declared property of " + g.name);
    }
  };
  for (const auto& [r, s] : basis_pairs(g.arity)) test(r, s);
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng = stream_rng(seed, i, kSampleDomain);
    const auto r = sampler(rng);
    test(r, sampler(rng));
  }
  return rep;
}

}  // namespace ndist
