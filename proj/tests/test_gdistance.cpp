#include <doctest.h>

#include <cmath>

#include "ndist/elementary.hpp"
#include "ndist/gdistance.hpp"
#include "ndist/registry.hpp"

using namespace ndist;

namespace {

const Label a = label(0), b = label(1);

GFunction squared_sum(int n) {
  GFunction g;
  g.name = "squared_sum";
  g.arity = n;
  g.eval = [](std::span<const double> r) {
    double s = 0.0;
    for (double x : r) s += x;
    return s * s;
  };
  return g;
}

}  // namespace

TEST_CASE("weighted sum aggregator") {
  const std::vector<double> r{1, 2, 3};
  CHECK(make_weighted_sum_g(1.0, 3)(r) == 6.0);
  const std::vector<double> twos{2, 2, 2};
  CHECK(make_weighted_sum_g(0.5, 3)(twos) == 3.0);
  CHECK(make_weighted_sum_g(0.0, 3)(r) == 0.0);
  CHECK_THROWS_AS(make_weighted_sum_g(-1.0, 3), ArgumentError);
  const auto g = make_weighted_sum_g(2.0, 3);
  CHECK(g.declared.additive);
  CHECK(g.declared.positively_homogeneous);
  CHECK(g.declared.superadditive);
}

TEST_CASE("r-vector sampler") {
  const auto sampler = r_vector_sampler(4);
  int zeros = 0;
  for (std::size_t i = 0; i < 2000; ++i) {
    Rng rng = stream_rng(1, i);
    const auto r = sampler(rng);
    REQUIRE(r.size() == 4);
    for (double x : r) {
      CHECK(x >= 0.0);
      CHECK(std::isfinite(x));
      zeros += x == 0.0;
    }
  }
  CHECK(zeros > 500);
}

TEST_CASE("g-distance checks") {
  const auto d = drastic(3);
  const auto sampler = config_sampler(label_space(), 3);
  CHECK(is_g_distance(d, make_weighted_sum_g(1.0, 3), sampler, 2000, 1).passed());
  CHECK(is_g_distance(d, make_weighted_sum_g(0.5, 3), sampler, 2000, 1).passed());

  const Config<Label> witness{{a, a, b}, a};
  const auto fail = is_g_distance(d, make_weighted_sum_g(0.4, 3), sampler, 0, 1, {witness});
  CHECK(fail.simplex_failures == 1);
  CHECK_FALSE(fail.passed());

  CHECK_THROWS_AS(is_g_distance(d, make_weighted_sum_g(1.0, 4), sampler, 10, 1), ConfigError);
}

TEST_CASE("property falsifiers") {
  const auto sampler = r_vector_sampler(3);

  const auto mx = make_max_g(3);
  CHECK(check_positively_homogeneous(mx, sampler, 2000).passed());
  const auto super = check_superadditive(mx, sampler, 2000);
  CHECK_FALSE(super.passed());
  REQUIRE_FALSE(super.counterexamples.empty());
  // Basis pairs are tried first: r = e1, s = e2.
  CHECK(super.counterexamples.front().inputs.at(0) == std::vector<double>{1, 0, 0});
  CHECK(super.counterexamples.front().inputs.at(1) == std::vector<double>{0, 1, 0});

  const auto sq = squared_sum(3);
  CHECK_FALSE(check_positively_homogeneous(sq, sampler, 2000).passed());
  CHECK_FALSE(check_additive_form(sq, sampler, 2000).additive);
  CHECK_FALSE(check_additive_form(mx, sampler, 2000).additive);

  for (double lambda : {0.0, 0.5, 1.0, 2.0, 10.0, 1.0 / 3.0}) {
    const auto form = check_additive_form(make_weighted_sum_g(lambda, 3), sampler, 2000);
    CHECK(form.additive);
    CHECK(form.lambda == lambda);
  }
}

TEST_CASE("concavity") {
  const auto sampler = r_vector_sampler(4);
  CHECK(check_concavity(make_scaled_min_g(4, 4.0), sampler, 5000).passed());
  CHECK(check_concavity(make_weighted_sum_g(1.5, 4), sampler, 5000).passed());
  CHECK_THROWS_AS(check_concavity(make_max_g(4), sampler, 100), ConfigError);

  // A g declared homogeneous and superadditive that is neither: the check
  // reports the refutation instead of passing.
  GFunction liar = squared_sum(4);
  liar.declared.positively_homogeneous = true;
  liar.declared.superadditive = true;
  CHECK_FALSE(check_concavity(liar, sampler, 2000).passed());
}

TEST_CASE("bounded g-distance") {
  const auto d = drastic(3);
  const auto g = make_weighted_sum_g(1.0, 3);
  const auto bd = bound_g_distance(d, g);
  CHECK(bd.eval(std::vector<Label>{a, a, b}) == Rational(1, 2));
  CHECK(is_g_distance(bd, g, config_sampler(label_space(), 3), 2000, 4).passed());
  CHECK_THROWS_AS(bound_g_distance(d, make_weighted_sum_g(0.5, 3)), ConfigError);
  CHECK_THROWS_AS(bound_g_distance(d, make_max_g(3)), ConfigError);
}

TEST_CASE("constructions preserve g-distances") {
  const auto sampler = config_sampler(plane_space(), 3);
  const auto sum = sum_plane(3);
  const auto g_half = make_weighted_sum_g(0.5, 3);  // K* = 1/2 for both distances
  for (double lambda : {0.5, 2.0, 10.0})
    CHECK(is_g_distance(scale(sum, lambda), g_half, sampler, 2000, 2).passed());
  CHECK(is_g_distance(combine_add(sum, diameter_plane(3)), g_half, sampler, 2000, 2).passed());

  // bound keeps the sum within lambda = 1 aggregation.
  const auto g_one = make_weighted_sum_g(1.0, 3);
  CHECK(is_g_distance(bound_g_distance(sum, g_one), g_one, sampler, 2000, 2).passed());
}
