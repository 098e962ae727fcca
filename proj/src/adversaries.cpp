#include "robust_oco/adversaries.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace robust_oco {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: n must be > 0");
  // rejection to avoid modulo bias
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return x % n;
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::string to_string(AdversaryKind k) {
  switch (k) {
    case AdversaryKind::sign_flip_window: return "sign_flip_window";
    case AdversaryKind::lb_theorem2: return "lb_theorem2";
    case AdversaryKind::lb_origin: return "lb_origin";
    case AdversaryKind::dro_reweight: return "dro_reweight";
    case AdversaryKind::iid_random: return "iid_random";
  }
  return "?";
}

AdversaryKind adversary_kind_from_string(const std::string& s) {
  for (auto k : {AdversaryKind::sign_flip_window, AdversaryKind::lb_theorem2, AdversaryKind::lb_origin,
                 AdversaryKind::dro_reweight, AdversaryKind::iid_random})
    if (s == to_string(k)) return k;
  if (s == "sign_flip") return AdversaryKind::sign_flip_window;
  throw std::invalid_argument("unknown adversary kind: " + s);
}

CorruptionLedger GradientStreams::ledger(double G) const {
  CorruptionLedger led(G);
  for (std::size_t i = 0; i < g.size(); ++i) led.update(g[i], g_tilde[i]);
  return led;
}

SignFlipAdversary::SignFlipAdversary(std::int64_t T, std::int64_t k, std::int64_t window_start, std::size_t dim)
    : T_(T), k_(k), start_(window_start), dim_(dim) {
  if (T < 1 || k < 0) throw std::invalid_argument("sign_flip: need T >= 1, k >= 0");
  if (k > 0 && (window_start < 1 || window_start + k - 1 > T))
    throw std::invalid_argument("sign_flip: corruption window must fit in [1, T]");
}

GradientPair SignFlipAdversary::next(std::int64_t t, const Vector& w) {
  Vector g = Vector::basis(dim_, 0) * (w[0] > 1.0 ? 1.0 : -1.0);
  Vector g_tilde = in_window(t) ? -g : g;
  return {std::move(g), std::move(g_tilde)};
}

GradientPair StreamAdversary::next(std::int64_t t, const Vector&) {
  if (t < 1 || t > horizon()) throw std::out_of_range("stream adversary: round outside the horizon");
  const auto i = static_cast<std::size_t>(t - 1);
  return {streams_.g[i], streams_.g_tilde[i]};
}

LowerBoundInstance gen_lb_theorem2(std::int64_t T, std::int64_t k, double D, std::uint64_t seed, std::size_t dim) {
  if (k < 0 || k >= T) throw std::invalid_argument("lb_theorem2: need 0 <= k < T");
  Rng rng(seed);
  std::vector<double> z(static_cast<std::size_t>(T));
  double S = 0.0;
  for (std::int64_t t = k; t < T; ++t) S += (z[t] = rng.sign());
  const double sgn = S >= 0.0 ? 1.0 : -1.0;
  const Vector q = Vector::basis(dim, 0);
  LowerBoundInstance out{{}, q * (-D * sgn)};
  for (std::int64_t t = 0; t < T; ++t) {
    const bool head = t < k;
    Vector g = q * (head ? sgn : z[t]);
    out.streams.g_tilde.push_back(head ? Vector(dim) : g);
    out.streams.g.push_back(std::move(g));
  }
  return out;
}

double random_seq_expectation(int T) {
  if (T < 1 || T > 20) throw std::invalid_argument("random_seq_expectation: T must be in [1, 20]");
  const std::uint64_t n = 1ULL << T;
  std::uint64_t total = 0;
  for (std::uint64_t mask = 0; mask < n; ++mask) {
    const int ones = std::popcount(mask);
    total += static_cast<std::uint64_t>(std::abs(2 * ones - T));
  }
  return static_cast<double>(total) / static_cast<double>(n);
}

LowerBoundInstance gen_lb_origin(std::int64_t T, std::int64_t k, double epsilon, std::size_t dim) {
  if (T < 1 || T > 30) throw std::invalid_argument("lb_origin: T must be in [1, 30]");
  if (k < 0 || k > T) throw std::invalid_argument("lb_origin: need 0 <= k <= T");
  const Vector e1 = Vector::basis(dim, 0);
  LowerBoundInstance out{{}, e1 * (2.0 * epsilon * std::exp(static_cast<double>(T)))};
  for (std::int64_t t = 0; t < T; ++t) {
    out.streams.g_tilde.push_back(e1);
    out.streams.g.push_back(t >= T - k ? e1 - e1 : e1);
  }
  return out;
}

GradientStreams gen_iid_base(std::int64_t T, double G, std::uint64_t seed, std::size_t dim) {
  Rng rng(seed);
  GradientStreams out;
  for (std::int64_t t = 0; t < T; ++t) {
    Vector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = rng.uniform(-1.0, 1.0);
    v[0] -= 0.5;
    v = clip(v, 1.0) * G;
    if (v.norm() > G) v = clip(v, G);
    out.g.push_back(v);
    out.g_tilde.push_back(std::move(v));
  }
  return out;
}

namespace {
std::vector<std::size_t> choose_rounds(std::int64_t T, std::int64_t k, Rng& rng) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(T));
  std::iota(idx.begin(), idx.end(), 0);
  // partial Fisher-Yates
  for (std::int64_t i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(i) + static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(T - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
  }
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}
}  // namespace

GradientStreams gen_iid_random(std::int64_t T, std::int64_t k, double G, std::uint64_t seed, std::size_t dim) {
  if (k < 0 || k > T) throw std::invalid_argument("iid_random: need 0 <= k <= T");
  GradientStreams out = gen_iid_base(T, G, seed, dim);
  Rng rng = Rng(seed).split(1);
  for (std::size_t i : choose_rounds(T, k, rng)) {
    Vector dir(dim);
    for (std::size_t j = 0; j < dim; ++j) dir[j] = rng.normal();
    if (dir.is_zero()) dir = Vector::basis(dim, 0);
    out.g_tilde[i] = dir * (100.0 * G / dir.norm());
  }
  return out;
}

DroDraw gen_dro_reweight(std::int64_t k, const std::vector<Vector>& base, std::uint64_t seed) {
  const auto T = static_cast<std::int64_t>(base.size());
  if (T < 1 || k < 0 || k > T) throw std::invalid_argument("dro_reweight: need 0 <= k <= T, T >= 1");
  Rng rng = Rng(seed).split(2);
  const double Td = static_cast<double>(T);
  std::vector<double> mass(static_cast<std::size_t>(T), 1.0);
  for (std::size_t i : choose_rounds(T, k, rng)) mass[i] = 2.0;
  const double total = Td + static_cast<double>(k);
  DroDraw out;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double p = mass[i] / total;
    out.weights.push_back(p);
    out.total_variation += 0.5 * std::abs(p - 1.0 / Td);
    out.streams.g.push_back(base[i]);
    out.streams.g_tilde.push_back(base[i] * (Td * p));
  }
  if (out.total_variation > static_cast<double>(k) / Td * (1.0 + 1e-12))
    throw NumericalError("dro_reweight: draw violates the total-variation budget");
  return out;
}

std::unique_ptr<Adversary> make_adversary(const AdversarySpec& s) {
  switch (s.kind) {
    case AdversaryKind::sign_flip_window:
      return std::make_unique<SignFlipAdversary>(s.T, s.k, s.window_start, s.dim);
    case AdversaryKind::lb_theorem2: {
      auto inst = gen_lb_theorem2(s.T, s.k, s.D, s.seed, s.dim);
      return std::make_unique<StreamAdversary>(std::move(inst.streams), std::move(inst.u_star));
    }
    case AdversaryKind::lb_origin: {
      auto inst = gen_lb_origin(s.T, s.k, s.epsilon, s.dim);
      return std::make_unique<StreamAdversary>(std::move(inst.streams), std::move(inst.u_star));
    }
    case AdversaryKind::dro_reweight: {
      auto base = gen_iid_base(s.T, s.G, s.seed, s.dim);
      return std::make_unique<StreamAdversary>(gen_dro_reweight(s.k, base.g, s.seed).streams);
    }
    case AdversaryKind::iid_random:
      return std::make_unique<StreamAdversary>(gen_iid_random(s.T, s.k, s.G, s.seed, s.dim));
  }
  throw std::invalid_argument("make_adversary: bad kind");
}

KTBettor::KTBettor(double epsilon) : epsilon_(epsilon), wealth_(epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("kt_bettor: epsilon must be > 0");
}

void KTBettor::observe(const Vector& g, double) {
  if (g.dim() != 1) throw DimensionError("kt_bettor: one-dimensional learner");
  require_finite(g, "kt_bettor gradient");
  if (std::abs(g[0]) > 1.0) throw std::invalid_argument("kt_bettor: |g| must be <= 1");
  wealth_ -= g[0] * w_;
  if (!(wealth_ > 0.0)) throw NumericalError("kt_bettor: wealth became nonpositive");
  sum_neg_g_ -= g[0];
  ++t_;
  w_ = sum_neg_g_ / static_cast<double>(t_ + 1) * wealth_;
}

void KTBettor::reset() {
  w_ = 0.0;
  sum_neg_g_ = 0.0;
  wealth_ = epsilon_;
  t_ = 0;
}

}  // namespace robust_oco
