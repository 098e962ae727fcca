#include <doctest.h>

#include <cmath>

#include "robust_oco/adversaries.hpp"
#include "robust_oco/mirror_descent.hpp"

using namespace robust_oco;

TEST_CASE("psi_prime examples") {
  CHECK(psi_prime(0.0, 4, 2, 1) == 0.0);
  CHECK(psi_prime(std::exp(1.0) - 1, 4, 2, 1) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(psi_prime(std::exp(3.0) - 1, 4, 2, 1) == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("psi_prime is continuous and nondecreasing") {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const double h = std::exp(rng.uniform(-2, 2)), V = h * h * std::exp(rng.uniform(0, 5)), a = std::exp(rng.uniform(-8, 0));
    double prev = 0.0;
    for (int j = 0; j <= 300; ++j) {
      const double x = a * std::expm1(j * 0.1);
      const double y = psi_prime(x, V, h, a);
      REQUIRE(y >= prev);
      prev = y;
    }
    const double x_star = a * std::expm1(V / (h * h));
    REQUIRE(psi_prime(x_star * (1 - 1e-12), V, h, a) == doctest::Approx(psi_prime(x_star * (1 + 1e-12), V, h, a)).epsilon(1e-9));
  }
}

TEST_CASE("link inverse round trip and the zero case") {
  RegularizerState reg(1.0, 3.0, 0.5);
  reg.advance(0.0);
  CHECK(link_inverse_solve(0.0, 4, 1, 0.1, reg) == 0.0);
  Rng rng(32);
  for (int i = 0; i < 1000; ++i) {
    RegularizerState r(rng.bernoulli(0.3) ? 0.0 : std::exp(rng.uniform(-3, 3)), rng.uniform(1, 6), std::exp(rng.uniform(-3, 1)));
    for (int j = 0; j < 5; ++j) r.advance(std::exp(rng.uniform(-3, 3)));
    const double h = std::exp(rng.uniform(-2, 2)), V = h * h * (1 + std::exp(rng.uniform(-5, 6))), a = std::exp(rng.uniform(-12, 0));
    const double x0 = std::exp(rng.uniform(-10, 10));
    const double x = link_inverse_solve(link_value(x0, V, h, a, r), V, h, a, r);
    REQUIRE(x == doctest::Approx(x0).epsilon(1e-8));
  }
}

TEST_CASE("link branch rule and continuity at the threshold") {
  RegularizerState reg(2.0, 2.0, 1.0);
  reg.advance(0.5);
  const double V = 3.0, h = 1.0, a = 0.01;
  const double x_star = a * std::expm1(V / (h * h));
  const double threshold = 6 * V / h + reg.radial_subgradient(x_star);
  CHECK(link_first_branch(threshold, V, h, a, reg));
  CHECK_FALSE(link_first_branch(threshold * (1 + 1e-9), V, h, a, reg));
  const double first = link_value_branch(x_star, V, h, a, reg, true);
  const double second = link_value_branch(x_star, V, h, a, reg, false);
  CHECK(first == doctest::Approx(second).epsilon(1e-9));
  // just above the threshold the solve lands past x*
  CHECK(link_inverse_solve(threshold * (1 + 1e-6), V, h, a, reg) > x_star);
}

TEST_CASE("mirror descent: null update, first prediction, determinism") {
  MirrorDescent md(2, {1.0, 1.0, 0.0, 1.0, 1.0});
  CHECK(md.predict() == Vector{0, 0});
  CHECK(md.predict() == md.predict());
  md.observe(Vector{0, 0}, 1.0);
  CHECK(md.predict() == Vector{0, 0});
  CHECK(md.theta() == Vector{0, 0});

  MirrorDescent a(1, {1.0, 1.0, 2.0, 3.0, 0.5}), b(1, {1.0, 1.0, 2.0, 3.0, 0.5});
  Rng rng(33);
  for (int t = 0; t < 500; ++t) {
    const Vector g{rng.uniform(-1, 1)};
    a.observe(g, 1.0);
    b.observe(g, 1.0);
    REQUIRE(a.predict() == b.predict());
  }
}

TEST_CASE("mirror descent moves against a constant gradient") {
  MirrorDescent md(1, {1.0, 1.0, 0.0, 1.0, 1.0});
  for (int t = 0; t < 10; ++t) {
    md.observe(Vector{1.0}, 1.0);
    REQUIRE(md.predict()[0] <= 0.0);
  }
  CHECK(md.predict()[0] < 0.0);
}

TEST_CASE("mirror descent state bookkeeping") {
  MirrorDescent md(1, {1.0, 2.0, 0.0, 1.0, 1.0});
  CHECK(md.B() == 16.0);
  CHECK(md.N_acc() == 4.0);
  double C = 0, B = 16, N = 4, h = 2;
  Rng rng(34);
  for (int t = 0; t < 200; ++t) {
    const Vector g{rng.uniform(-h, h)};
    const double h_next = h * (rng.bernoulli(0.05) ? 2.0 : 1.0);
    md.observe(g, h_next);
    C += g.squared_norm();
    B += 4 * N;
    N += g.squared_norm() / (h * h);
    h = h_next;
    REQUIRE(md.C() == doctest::Approx(C));
    REQUIRE(md.B() == doctest::Approx(B));
    REQUIRE(md.N_acc() == doctest::Approx(N));
    REQUIRE(md.V() == doctest::Approx(h * h + C));
    REQUIRE(md.V() >= h * h);
    REQUIRE(md.a_scale() == doctest::Approx(1.0 / (std::sqrt(B) * std::pow(std::max(std::log(B), 1.0), 2))));
  }
  CHECK_THROWS_AS(md.observe(Vector{10 * h}, h), std::logic_error);
  CHECK_THROWS_AS(md.observe(Vector{0.0}, h / 2), std::logic_error);
}

TEST_CASE("mirror gradient matches a finite difference of the potential") {
  // Psi(x) = integral of Psi'; check 3 Psi' against the numeric derivative of 3 * integral
  Rng rng(35);
  for (int i = 0; i < 100; ++i) {
    const double h = std::exp(rng.uniform(-1, 1)), V = h * h * std::exp(rng.uniform(0, 3)), a = std::exp(rng.uniform(-5, 0));
    const double x = std::exp(rng.uniform(-3, 3));
    const auto integral = [&](double upper) {
      // composite Simpson on [0, upper]
      const int n = 20000;
      const double step = upper / n;
      double s = psi_prime(0, V, h, a) + psi_prime(upper, V, h, a);
      for (int j = 1; j < n; ++j) s += (j % 2 ? 4 : 2) * psi_prime(j * step, V, h, a);
      return s * step / 3;
    };
    const double d = 1e-4 * x;
    const double fd = 3 * (integral(x + d) - integral(x - d)) / (2 * d);
    REQUIRE(3 * psi_prime(x, V, h, a) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("composite regret at the origin stays below 8 eps h") {
  Rng rng(36);
  for (int run = 0; run < 20; ++run) {
    const double eps = std::exp(rng.uniform(-2, 2)), h = std::exp(rng.uniform(-1, 1));
    MirrorDescent md(1, {eps, h, rng.uniform(0, 3), std::log(1000.0), eps});
    double regret = 0;
    for (int t = 0; t < 1000; ++t) {
      const Vector w = md.predict();
      const Vector g{rng.bernoulli(0.5) ? h : rng.uniform(-h, h)};
      regret += dot(g, w) + md.regularizer().evaluate(w);
      md.observe(g, h);
    }
    REQUIRE(regret <= 8 * eps * h);
  }
}
