#include <doctest.h>

#include <cmath>

#include "robust_oco/adversaries.hpp"
#include "robust_oco/protocol.hpp"

using namespace robust_oco;

TEST_CASE("presets") {
  ProtocolConfig c;
  c.mode = ProtocolMode::known_G;
  c.k = 4;
  c.G = 2.0;
  c.epsilon = 3.0;
  c.T = 1000;
  auto r = resolve_preset(c);
  CHECK(r.c == 8.0);
  CHECK(*r.p == doctest::Approx(std::log(1000.0)));
  CHECK(*r.alpha_offset == 0.75);

  c.k = 0;
  r = resolve_preset(c);
  CHECK(r.c == 0.0);

  ProtocolConfig u;
  u.mode = ProtocolMode::unknown_G_case1;
  u.k = 5;
  u.tau_G = 2.0;
  u.epsilon = 1.0;
  u.G = 7.0;
  r = resolve_preset(u);
  CHECK(r.c == 10.0);
  CHECK(r.gamma_beta == 5.0);
  CHECK(r.gamma_alpha == 1.0);
  CHECK(r.tau_D == 0.2);
  CHECK(*r.alpha_offset == doctest::Approx(0.2));
  CHECK_FALSE(r.G.has_value());
  CHECK(*r.p == doctest::Approx(std::log(kStreamingHorizon)));

  u.mode = ProtocolMode::unknown_G_case2;
  r = resolve_preset(u);
  CHECK(r.c == 2.0);
  CHECK(r.gamma_beta == 25.0);
  CHECK(r.gamma_alpha == 6.0);
  CHECK(r.tau_D == 1.0);

  ProtocolConfig missing;
  missing.mode = ProtocolMode::known_G;
  CHECK_THROWS_AS(resolve_preset(missing), std::invalid_argument);
  CHECK(protocol_mode_from_string(to_string(ProtocolMode::unknown_G_case2)) == ProtocolMode::unknown_G_case2);
  CHECK_THROWS(protocol_mode_from_string("nope"));
}

TEST_CASE("known-G, k = 0, clean stream: no clipping, no Huber cost") {
  ProtocolConfig c;
  c.k = 0;
  c.G = 1.0;
  c.T = 200;
  c.dim = 2;
  Protocol p(c);
  const auto s = gen_iid_base(200, 1.0, 5, 2);
  for (std::size_t t = 0; t < s.size(); ++t) {
    const auto info = p.round(s.g_tilde[t]);
    REQUIRE(info.g_clipped == s.g_tilde[t]);
    REQUIRE(info.regularizer_at_w == 0.0);
  }
  CHECK(p.decomposition(Vector{1, 1}).correction_term == 0.0);
}

TEST_CASE("known-G clips a corrupted round to G") {
  ProtocolConfig c;
  c.k = 1;
  c.G = 1.0;
  c.T = 10;
  Protocol p(c);
  const auto info = p.round(Vector{100.0}, Vector{0.5});
  CHECK(info.g_clipped.norm() == doctest::Approx(1.0));
  CHECK(info.clipped);
}

TEST_CASE("decomposition identity on a 1000-round corrupted run") {
  for (auto mode : {ProtocolMode::known_G, ProtocolMode::unknown_G_case1, ProtocolMode::unknown_G_case2}) {
    ProtocolConfig c;
    c.mode = mode;
    c.k = 15;
    c.G = 1.0;
    c.T = 1000;
    c.dim = 3;
    Protocol p(c);
    const auto s = gen_iid_random(1000, 15, 1.0, 9, 3);
    const Vector u{0.5, -2.0, 1.0};
    for (std::size_t t = 0; t < s.size(); ++t) p.round(s.g_tilde[t], s.g[t]);
    const auto d = p.decomposition(u);
    CHECK(d.identity_residual() <= 1e-6);
    CHECK(d.true_regret == doctest::Approx(p.true_regret(u)));
    CHECK(p.round() == 1000);
    CHECK(p.snapshots().size() == 1000);
  }
}

TEST_CASE("unknown-G modes wire the filter and tracker") {
  ProtocolConfig c;
  c.mode = ProtocolMode::unknown_G_case1;
  c.k = 2;
  c.tau_G = 0.01;
  c.T = 300;
  Protocol p(c);
  CHECK(p.filter().has_value());
  CHECK(p.tracker().has_value());
  CHECK_FALSE(p.mirror_descent().has_value());
  Rng rng(51);
  double prev_h = 0.0;
  for (int t = 0; t < 300; ++t) {
    const auto info = p.round(Vector{rng.uniform(-3, 3)});
    REQUIRE(info.g_clipped.norm() <= info.h);
    REQUIRE(info.h >= prev_h);
    REQUIRE(info.h_next >= info.h);
    prev_h = info.h;
  }
  CHECK(p.filter()->h() <= 4 * 3.0);
}

TEST_CASE("protocol input validation") {
  ProtocolConfig c;
  c.G = 1.0;
  c.dim = 2;
  Protocol p(c);
  CHECK_THROWS_AS(p.round(Vector{1.0}), DimensionError);
  CHECK_THROWS_AS((p.round(Vector{NAN, 0.0})), NumericalError);
  CHECK_THROWS_AS((p.round(Vector{1.0, 0.0}, Vector{1.0})), DimensionError);
}

TEST_CASE("known-G composite regret is bounded by one constant across scales") {
  // sum <g, w - u> + f_t(w_t) - f_t(u) over (eps G + |u| G sqrt T) (1 + ln(1 + |u| T / eps))^2
  double worst = 0.0;
  for (double G : {1.0, 10.0}) {
    for (std::int64_t T : {100, 1000, 10000}) {
      const auto s = gen_iid_base(T, G, 77, 1);
      for (double u : {0.0, 1.0, -1.0, 100.0, -100.0}) {
        ProtocolConfig c;
        c.k = 0;
        c.G = G;
        c.T = T;
        Protocol p(c);
        for (std::size_t t = 0; t < s.size(); ++t) p.round(s.g_tilde[t]);
        const double composite = p.decomposition(Vector{u}).composite_term;
        const double polylog = 1 + std::log1p(std::abs(u) * T / 1.0);
        const double scale = (G + std::abs(u) * G * std::sqrt(static_cast<double>(T))) * polylog * polylog;
        worst = std::max(worst, composite / scale);
      }
    }
  }
  CHECK(worst <= 1.0);
}

TEST_CASE("online to batch") {
  CHECK(online_to_batch(std::vector<Vector>{Vector{0.0}, Vector{1.0}, Vector{2.0}}) == Vector{1.0});
  const std::vector<Vector> same(7, Vector{1.5, -2.0});
  const Vector avg = online_to_batch(same);
  CHECK(avg[0] == doctest::Approx(1.5));
  CHECK(avg[1] == doctest::Approx(-2.0));
  const std::vector<Vector> three{Vector{1, 2, 3}, Vector{3, 4, 5}};
  CHECK(online_to_batch(three) == Vector{2, 3, 4});
  CHECK_THROWS_AS(online_to_batch(std::vector<Vector>{}), std::invalid_argument);
}
