#include <doctest.h>

#include <cmath>

#include "robust_oco/adversaries.hpp"

using namespace robust_oco;

TEST_CASE("sign flip window") {
  SignFlipAdversary adv(400, 20, 300);
  int corrupted = 0;
  for (std::int64_t t = 1; t <= 400; ++t) {
    const auto gp = adv.next(t, Vector{t % 3 == 0 ? 2.0 : 0.5});
    REQUIRE(gp.g_tilde.norm() == 1.0);
    if (gp.corrupted()) {
      ++corrupted;
      REQUIRE(t >= 300);
      REQUIRE(t <= 319);
    }
  }
  CHECK(corrupted == 20);
  CHECK(adv.next(1, Vector{1.0}).g[0] == -1.0);
  SignFlipAdversary clean(50, 0, 1);
  for (std::int64_t t = 1; t <= 50; ++t) REQUIRE_FALSE(clean.next(t, Vector{0.0}).corrupted());
  CHECK_THROWS(SignFlipAdversary(10, 5, 8));
}

TEST_CASE("lb_theorem2 construction") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = gen_lb_theorem2(64, 8, 1.5, seed);
    const auto led = inst.streams.ledger(1.0);
    REQUIRE(led.count_corrupted == 8);
    for (std::size_t t = 0; t < 64; ++t) {
      REQUIRE(inst.streams.g[t].norm() <= 1.0);
      REQUIRE(inst.streams.g_tilde[t].norm() <= 1.0);
      if (t < 8) REQUIRE(dot(inst.streams.g[t], inst.u_star) == -1.5);
    }
  }
  CHECK_THROWS(gen_lb_theorem2(5, 5, 1.0, 0));
}

TEST_CASE("random sequence expectation") {
  CHECK(random_seq_expectation(1) == 1.0);
  CHECK(random_seq_expectation(2) == 1.0);
  CHECK(random_seq_expectation(4) == 1.5);
  for (int T = 1; T <= 20; ++T) REQUIRE(random_seq_expectation(T) >= std::sqrt(T / 16.0));
  CHECK_THROWS(random_seq_expectation(21));
}

TEST_CASE("lb_origin") {
  const auto inst = gen_lb_origin(5, 0, 1.0);
  CHECK(inst.u_star[0] == doctest::Approx(2 * std::exp(5.0)));
  CHECK(inst.u_star[0] == doctest::Approx(296.83).epsilon(1e-4));
  CHECK(inst.streams.ledger(1.0).count_corrupted == 0);
  const auto k3 = gen_lb_origin(10, 3, 0.5);
  CHECK(k3.streams.ledger(1.0).count_corrupted == 3);
  CHECK(k3.streams.g.back().norm() == 0.0);
  CHECK_THROWS(gen_lb_origin(31, 0, 1.0));
}

TEST_CASE("iid outliers and DRO reweighting budgets") {
  const auto s = gen_iid_random(500, 12, 2.0, 3, 3);
  const auto led = s.ledger(2.0);
  CHECK(led.count_corrupted == 12);
  for (std::size_t t = 0; t < s.size(); ++t) REQUIRE(s.g[t].norm() <= 2.0 * (1 + 1e-15));

  const auto base = gen_iid_base(400, 1.0, 8, 2);
  CHECK(gen_dro_reweight(0, base.g, 1).streams.ledger(1.0).count_corrupted == 0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto d = gen_dro_reweight(25, base.g, seed);
    REQUIRE(d.total_variation <= 25.0 / 400 * (1 + 1e-12));
    double mass = 0;
    for (double p : d.weights) mass += p;
    REQUIRE(mass == doctest::Approx(1.0));
    REQUIRE(d.streams.ledger(1.0).normalized_deviation() <= 2 * 25 * (1 + 1e-12));
  }
}

TEST_CASE("kt bettor") {
  KTBettor kt(1.0);
  CHECK(kt.predict() == Vector{0.0});
  kt.observe(Vector{-1.0});
  CHECK(kt.predict()[0] == 0.5);
  double prev = kt.predict()[0];
  for (int t = 2; t < 60; ++t) {
    kt.observe(Vector{-1.0});
    REQUIRE(kt.predict()[0] > prev);
    prev = kt.predict()[0];
  }
  CHECK_THROWS(kt.observe(Vector{1.5}));
  kt.reset();
  CHECK(kt.predict() == Vector{0.0});
  Rng rng(61);
  KTBettor r(2.0);
  for (int t = 0; t < 10000; ++t) {
    r.observe(Vector{rng.uniform(-1, 1)});
    REQUIRE(r.wealth() > 0.0);
  }
}

TEST_CASE("rng is reproducible and splits") {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
  Rng c = Rng(5).split(1), d = Rng(5).split(1), e = Rng(5).split(2);
  CHECK(c.next_u64() == d.next_u64());
  CHECK(Rng(5).split(1).next_u64() != e.next_u64());
  Rng u(9);
  for (int i = 0; i < 10000; ++i) {
    const double x = u.uniform();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    REQUIRE(u.below(7) < 7);
  }
}
