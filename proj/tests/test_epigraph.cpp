#include <doctest.h>

#include <cmath>

#include "robust_oco/adversaries.hpp"
#include "robust_oco/epigraph.hpp"

using namespace robust_oco;

TEST_CASE("quad weights examples") {
  QuadWeights q{2.0, 6.0};
  auto w = q.compute(false, false);
  CHECK(w.alpha == 0.0);
  CHECK(w.beta == 0.0);
  w = q.compute(false, true);
  CHECK(w.beta == 3.0);
  w = q.compute(true, false);
  CHECK(w.alpha == 2.0);
  w = q.compute(true, true);
  CHECK(w.alpha == 2.0);
  CHECK(w.beta == 2.0);
  CHECK(w.sum() <= q.gamma());
}

TEST_CASE("projection examples") {
  const EpigraphPoint inside{Vector{0.0}, 1.0};
  CHECK(weighted_project(inside, 1, 1).y == 1.0);
  CHECK(weighted_project(inside, 1, 1).w == Vector{0.0});

  const auto below = weighted_project({Vector{0.0, 0.0}, -3.0}, 2.5, 0.3);
  CHECK(below.w == Vector{0.0, 0.0});
  CHECK(below.y == 0.0);

  // root of 2 s^3 + s - 2, solved independently by bisection
  double lo = 0, hi = 1;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    (2 * m * m * m + m - 2 < 0 ? lo : hi) = m;
  }
  const auto p = weighted_project({Vector{2.0}, 0.0}, 1, 1);
  CHECK(p.w[0] == doctest::Approx(lo).epsilon(1e-12));
  CHECK(p.w[0] == doctest::Approx(0.835122).epsilon(1e-6));
  CHECK(p.y == doctest::Approx(lo * lo).epsilon(1e-12));
  CHECK(p.feasible());
}

TEST_CASE("correction direction examples") {
  const EpigraphPoint hat{Vector{2.0}, 0.0};
  const auto proj = weighted_project(hat, 1, 1);
  CHECK(correction_direction(proj, proj, 1, 1, Vector{1.0}, 1.0).delta_w == Vector{0.0});

  // unit scale: ||g||^2/h^2 + a^2/gamma^2 = 1 leaves a direction with unit dual form
  const auto unit = correction_direction(hat, proj, 1, 1, Vector{1.0}, 0.0);
  CHECK(dual_form(unit.delta_w, unit.delta_y, 1, 1) == doctest::Approx(1.0).epsilon(1e-9));
  const double dw = 2.0 - proj.w[0], dy = 0.0 - proj.y;
  CHECK(unit.delta_w[0] == doctest::Approx(dw / std::hypot(dw, dy)).epsilon(1e-12));

  Rng rng(41);
  bool sqrt2_violated = false;
  for (int i = 0; i < 2000; ++i) {
    const double h = std::exp(rng.uniform(-2, 2)), gamma = std::exp(rng.uniform(-2, 2));
    EpigraphPoint q{Vector{rng.normal() * 3, rng.normal() * 3}, rng.uniform(-5, 1)};
    const auto pr = weighted_project(q, h, gamma);
    Vector g{rng.normal(), rng.normal()};
    g *= h / g.norm();
    const auto c = correction_direction(q, pr, h, gamma, g, gamma);
    if (q.feasible()) continue;
    REQUIRE(dual_form(c.delta_w, c.delta_y, h, gamma) == doctest::Approx(4.0).epsilon(1e-9));
    REQUIRE(c.delta_w.norm() <= 2 * h * (1 + 1e-12));
    REQUIRE(std::abs(c.delta_y) <= 2 * gamma * (1 + 1e-12));
    sqrt2_violated = sqrt2_violated || c.delta_w.norm() > std::sqrt(2.0) * h || std::abs(c.delta_y) > std::sqrt(2.0) * gamma;
  }
  // with ||g|| = h and a = gamma the scale is 2, so the tighter constant cannot hold
  CHECK(sqrt2_violated);
}

TEST_CASE("epigraph learner: zero feedback stays at the origin") {
  EpigraphLearner e(2, {1.0, 1.0, 0.0, 2.0, 1.0, 1.0, 0.0});
  for (int t = 0; t < 50; ++t) {
    e.observe(Vector{0, 0}, 1.0, 0.0);
    REQUIRE(e.predict() == Vector{0, 0});
  }
}

TEST_CASE("epigraph learner: feasible, deterministic, fed gradients within hints") {
  const EpigraphParams params{1.0, 1.0, 1.0, std::log(1e4), 1.0, 0.5, 0.5};
  EpigraphLearner a(2, params), b(2, params);
  Rng rng(42);
  QuadWeights weights{0.5, 0.5};
  double h = 1.0;
  for (int t = 0; t < 10000; ++t) {
    Vector g{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    g = g * (h / std::max(h, g.norm()));
    const bool fd = rng.bernoulli(0.001), td = rng.bernoulli(0.002);
    const double h_next = fd ? 2 * h : h;
    const double a_t = weights.compute(fd, td).sum();
    const auto info = a.observe(g, h_next, a_t);
    b.observe(g, h_next, a_t);
    REQUIRE(a.played().feasible());
    REQUIRE(a.played().w == b.played().w);
    REQUIRE(a.played().y == b.played().y);
    REQUIRE(info.fed_w.norm() <= 1.5 * h * (1 + 1e-12));
    REQUIRE(std::abs(info.fed_y) <= 1.5 * a.gamma() * (1 + 1e-12));
    h = h_next;
  }
}

TEST_CASE("epigraph iterates grow at most like (eps/2) 2^T") {
  Rng rng(43);
  for (int run = 0; run < 20; ++run) {
    const double eps = std::exp(rng.uniform(-2, 1));
    EpigraphLearner e(1, {eps, 1.0, 0.0, 1.0, eps, 1.0, 0.0});
    double max_norm = 0.0;
    for (int t = 1; t <= 40; ++t) {
      max_norm = std::max(max_norm, e.predict().norm());
      REQUIRE(max_norm <= 0.5 * eps * std::ldexp(1.0, t));
      e.observe(Vector{-1.0}, 1.0, 0.0);
    }
  }
}
