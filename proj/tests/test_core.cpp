#include <doctest.h>

#include <atomic>
#include <cmath>

#include "ndist/elementary.hpp"
#include "ndist/estimate.hpp"
#include "ndist/registry.hpp"
#include "ndist/verify.hpp"

using namespace ndist;

namespace {

const Label a = label(0), b = label(1), c = label(2);

Config<Label> cfg(std::vector<Label> pts, Label z) { return {std::move(pts), z}; }

}  // namespace

TEST_CASE("rational arithmetic and formatting") {
  const Rational half(1, 2);
  CHECK(half + Rational(1, 3) == Rational(5, 6));
  CHECK(half == Rational(2, 4));
  CHECK(Rational(3) == 3);
  CHECK(Rational(1, 3) < half);
  CHECK(to_string(Rational(-6, 4)) == "-3/2");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(parse_rational("5/17") == Rational(5, 17));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5e2") == Rational(-150));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  Rational r;
  REQUIRE(approximate_rational(0.2857142857142857, 1000000, 1e-9, r));
  CHECK(r == Rational(2, 7));
  CHECK_FALSE(approximate_rational(M_PI, 100, 1e-12, r));
}

TEST_CASE("replaced tuples") {
  const auto d = drastic(3);
  CHECK(eval_replaced(d, cfg({a, a, b}, a), 2) == 0);
  CHECK(eval_replaced(d, cfg({a, a, b}, a), 0) == 1);
  CHECK_THROWS_AS(eval_replaced(d, cfg({a, a, b}, a), 3), ArgumentError);
  CHECK_THROWS_AS(eval_replaced(d, cfg({a, b}, a), 0), ArgumentError);

  const auto diam = diameter_real(3);
  // (0,3,5) with x_3 replaced by 4: max pairwise distance of {0,3,4}
  CHECK(eval_replaced(diam, Config<double>{{0.0, 3.0, 5.0}, 4.0}, 2) == doctest::Approx(4.0));
}

TEST_CASE("simplex ratio") {
  CHECK(simplex_ratio(drastic(3), cfg({a, a, b}, a)).ratio == Rational(1, 2));
  CHECK(simplex_ratio(drastic(3), cfg({b, b, b}, b)).ratio == 0);

  // cardinality of three distinct labels, z = a: terms 2, 1, 1
  const auto s = simplex_ratio(cardinality(3), cfg({a, b, c}, a));
  CHECK(s.numerator == 2);
  CHECK(s.denominator == 4);
  CHECK(s.ratio == Rational(1, 2));

  // Positive value over a vanishing sum is reported, not divided.
  NDistance<Label, Rational> broken;
  broken.name = "broken";
  broken.arity = 2;
  broken.eval = [](std::span<const Label> x) { return Rational(x[0] == label(0) && x[1] == label(1) ? 1 : 0); };
  CHECK_THROWS_AS(simplex_ratio(broken, cfg({a, b}, c)), AxiomViolation);
}

TEST_CASE("verify_axioms") {
  SUBCASE("drastic passes") {
    const auto rep = verify_axioms(drastic(4), config_sampler(label_space(), 4), 1000, 3);
    CHECK(rep.passed());
    CHECK(rep.samples == 1000);
  }
  SUBCASE("arithmetic mean passes") {
    CHECK(verify_axioms(arithmetic_mean(3), config_sampler(real_space(), 3), 1000, 3).passed());
  }
  SUBCASE("a map ignoring one argument fails") {
    NDistance<double, double> d;
    d.name = "first_two";
    d.arity = 3;
    d.eval = [](std::span<const double> x) { return std::abs(x[0] - x[1]); };
    const auto rep = verify_axioms(d, config_sampler(real_space(), 3), 1000, 3);
    CHECK_FALSE(rep.passed());
    CHECK(rep.identity_failures + rep.symmetry_failures > 0);
    REQUIRE_FALSE(rep.counterexamples.empty());
  }
  SUBCASE("results do not depend on the worker count") {
    const auto sampler = config_sampler(real_space(), 3);
    NDistance<double, double> d;
    d.name = "first_two";
    d.arity = 3;
    d.eval = [](std::span<const double> x) { return std::abs(x[0] - x[1]); };
    const auto r1 = verify_axioms(d, sampler, 2000, 9, 1);
    const auto r4 = verify_axioms(d, sampler, 2000, 9, 4);
    CHECK(r1.identity_failures == r4.identity_failures);
    CHECK(r1.symmetry_failures == r4.symmetry_failures);
  }
}

TEST_CASE("verify_simplex") {
  const auto d = diameter_real(4);
  const auto sampler = config_sampler(real_space(), 4);
  CHECK(verify_simplex(d, Rational(1, 3), sampler, 10000, 7).empty());
  CHECK(verify_simplex(d, Rational(1), sampler, 1000, 7).empty());

  const Config<double> witness{{0.0, 0.0, 0.0, 1.0}, 0.0};
  const auto v = verify_simplex(d, Rational(3, 10), sampler, 0, 7, {witness});
  REQUIRE(v.size() == 1);
  CHECK(v[0].lhs / (v[0].rhs / 0.3) == doctest::Approx(1.0 / 3.0));
  CHECK(v[0].excess > 0);

  CHECK_THROWS_AS(verify_simplex(d, Rational(0), sampler, 10, 1), ArgumentError);
  CHECK_THROWS_AS(verify_simplex(d, Rational(3, 2), sampler, 10, 1), ArgumentError);
}

TEST_CASE("estimate_best_constant") {
  SUBCASE("drastic n=5 reaches 1/4") {
    EstimateOptions opt;
    opt.budget = 1000;
    const auto r = estimate_best_constant(drastic(5), label_space(), opt);
    CHECK(r.best_ratio == Rational(1, 4));
    CHECK(r.violations.empty());
  }
  SUBCASE("area n=4 reaches 2/5") {
    auto reg = std::get<Registered<Point2, double>>(make_distance("sec_area", 4));
    EstimateOptions opt;
    opt.budget = 10000;
    const auto r = estimate_best_constant(reg.distance, reg.space, opt);
    CHECK(std::abs(r.best_ratio - 0.4) <= 1e-9);
    CHECK(r.violations.empty());
  }
  SUBCASE("identical reports for any worker count") {
    auto reg = std::get<Registered<Point2, double>>(make_distance("sec_radius", 4));
    EstimateOptions opt;
    opt.budget = 3000;
    opt.seed = 11;
    opt.workers = 1;
    const auto r1 = estimate_best_constant(reg.distance, reg.space, opt);
    opt.workers = 5;
    const auto r5 = estimate_best_constant(reg.distance, reg.space, opt);
    CHECK(r1.best_ratio == r5.best_ratio);
    CHECK(r1.witness == r5.witness);
    CHECK(r1.sampled_best == r5.sampled_best);
  }
  SUBCASE("the sampled maximum never decreases with the budget") {
    auto reg = std::get<Registered<Point2, double>>(make_distance("sec_area", 5));
    EstimateOptions opt;
    double prev = 0.0;
    for (std::size_t budget : {10, 100, 1000, 5000}) {
      opt.budget = budget;
      const auto r = estimate_best_constant(reg.distance, reg.space, opt);
      CHECK(r.sampled_best >= prev);
      prev = r.sampled_best;
    }
  }
  SUBCASE("zero budget is rejected") {
    EstimateOptions opt;
    opt.budget = 0;
    CHECK_THROWS_AS(estimate_best_constant(drastic(3), label_space(), opt), ArgumentError);
  }
}

TEST_CASE("seeded streams and parallel chunks") {
  auto x = stream_rng(5, 17, kSampleDomain)();
  CHECK(x == stream_rng(5, 17, kSampleDomain)());
  CHECK(x != stream_rng(5, 18, kSampleDomain)());
  CHECK(x != stream_rng(5, 17, kRefineDomain)());

  std::vector<int> hits(1000, 0);
  parallel_chunks(hits.size(), 7, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) ++hits[i];
  });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));

  CHECK_THROWS_AS(parallel_chunks(100, 4,
                                  [](std::size_t begin, std::size_t, unsigned) {
                                    if (begin > 0) throw ArgumentError("chunk");
                                  }),
                  ArgumentError);
}

TEST_CASE("registry") {
  const auto d = std::get<Registered<Label, Rational>>(make_distance("drastic", 3));
  REQUIRE(d.distance.theoretical_k);
  CHECK(d.distance.theoretical_k->is_exact());
  CHECK(d.distance.theoretical_k->hi == Rational(1, 2));

  const auto r = std::get<Registered<Point2, double>>(make_distance("sec_radius", 4));
  CHECK(r.distance.theoretical_k->hi == Rational(1, 3));

  const auto f = std::get<Registered<VecK, double>>(make_distance("fermat_euclidean", 3));
  CHECK(f.distance.theoretical_k->lo == Rational(1, 2));
  CHECK(f.distance.theoretical_k->hi == Rational(8, 15));
  CHECK_FALSE(f.distance.theoretical_k->is_exact());

  const auto dir = std::get<Registered<ExactPoint2, Rational>>(make_distance("directions", 5));
  CHECK(dir.distance.theoretical_k->hi_exclusive);

  CHECK_THROWS_AS(make_distance("nope", 3), ConfigError);
  CHECK_THROWS_AS(make_distance("drastic", 1), ConfigError);
  CHECK_THROWS_AS(make_distance("sec_area", 2), ConfigError);
  CHECK_THROWS_AS(make_distance("ap", 2), ConfigError);
  CHECK_THROWS_AS(make_distance("directions", 2), ConfigError);
  CHECK_THROWS_AS(make_distance("fermat_graph3", 4), ConfigError);
  CHECK_THROWS_AS(make_distance("add(drastic,diameter)", 3), ConfigError);

  for (const auto& name : registered_names()) {
    const int n = std::max(3, min_arity(name));
    const auto any = make_distance(name, n);
    std::visit([&](const auto& reg) {
      INFO(name);
      CHECK(reg.distance.arity == n);
      CHECK_FALSE(reg.distance.witnesses.empty());
    }, any);
  }
}

TEST_CASE("registered distances stay within K = 1 and are symmetric") {
  for (const auto& name : registered_names()) {
    const int n = std::max(3, min_arity(name));
    std::visit([&](const auto& reg) {
      INFO(name);
      const auto rep = verify_axioms(reg.distance, config_sampler(reg.space, n), 500, 21);
      CHECK(rep.passed());
    }, make_distance(name, n));
  }
}

TEST_CASE("registered witnesses attain exact constants") {
  for (const auto& name : registered_names()) {
    for (int n = std::max(2, min_arity(name)); n <= 6; ++n) {
      if (name == "fermat_graph3" && n != 3) continue;
      std::visit([&](const auto& reg) {
        const auto& d = reg.distance;
        if (!d.theoretical_k || !d.theoretical_k->is_exact()) return;
        INFO(name << " n=" << n);
        const auto s = simplex_ratio(d, d.witnesses.front());
        CHECK(std::abs(ValueTraits<std::decay_t<decltype(s.ratio)>>::to_double(s.ratio) -
                       to_double(d.theoretical_k->hi)) <= 1e-9);
      }, make_distance(name, n));
    }
  }
}
