#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "robust_oco/core.hpp"
#include "robust_oco/rng.hpp"
#include "robust_oco/vector.hpp"

namespace robust_oco {

enum class AdversaryKind { sign_flip_window, lb_theorem2, lb_origin, dro_reweight, iid_random };

std::string to_string(AdversaryKind k);
AdversaryKind adversary_kind_from_string(const std::string& s);

struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::sign_flip_window;
  std::int64_t T = 400;
  std::int64_t k = 0;
  std::int64_t window_start = 1;
  double D = 1.0;        // comparator magnitude (lb_theorem2)
  double G = 1.0;        // true gradient bound
  double epsilon = 1.0;  // lb_origin scale
  std::uint64_t seed = 0;
  std::size_t dim = 1;

  friend bool operator==(const AdversarySpec&, const AdversarySpec&) = default;
};

/// One round of the game: the true gradient and what the learner observes.
struct GradientPair {
  Vector g;
  Vector g_tilde;
  bool corrupted() const { return !(g == g_tilde); }
};

/// Pre-materialized (oblivious) pair of streams.
struct GradientStreams {
  std::vector<Vector> g;
  std::vector<Vector> g_tilde;

  std::size_t size() const { return g.size(); }
  CorruptionLedger ledger(double G) const;
};

/// Interactive gradient source: sees w_t before emitting round t.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual GradientPair next(std::int64_t t, const Vector& w) = 0;
  /// Loss at w when the adversary has one (sign flip), else nullopt.
  virtual std::optional<double> loss(const Vector&) const { return std::nullopt; }
  /// Adversary-designated comparator, if the construction has one.
  virtual std::optional<Vector> comparator() const { return std::nullopt; }
  virtual std::int64_t horizon() const = 0;
};

/// loss |w_1 - 1|; g = sign(w_1 - 1) e_1 with -1 at w_1 = 1, flipped on
/// rounds [window_start, window_start + k - 1].
class SignFlipAdversary : public Adversary {
 public:
  SignFlipAdversary(std::int64_t T, std::int64_t k, std::int64_t window_start, std::size_t dim = 1);

  GradientPair next(std::int64_t t, const Vector& w) override;
  std::optional<double> loss(const Vector& w) const override { return std::abs(w[0] - 1.0); }
  std::optional<Vector> comparator() const override { return Vector::basis(dim_, 0); }
  std::int64_t horizon() const override { return T_; }
  bool in_window(std::int64_t t) const { return t >= start_ && t < start_ + k_; }

 private:
  std::int64_t T_;
  std::int64_t k_;
  std::int64_t start_;
  std::size_t dim_;
};

/// Replays pre-materialized streams, ignoring the learner.
class StreamAdversary : public Adversary {
 public:
  explicit StreamAdversary(GradientStreams s, std::optional<Vector> u = std::nullopt)
      : streams_(std::move(s)), u_(std::move(u)) {}

  GradientPair next(std::int64_t t, const Vector& w) override;
  std::optional<Vector> comparator() const override { return u_; }
  std::int64_t horizon() const override { return static_cast<std::int64_t>(streams_.size()); }
  const GradientStreams& streams() const { return streams_; }

 private:
  GradientStreams streams_;
  std::optional<Vector> u_;
};

struct LowerBoundInstance {
  GradientStreams streams;
  Vector u_star;
};

/// z_{k+1..T} iid signs, z_{1..k} = sign(sum_{t>k} z_t) (sign 0 = +1),
/// g_t = z_t e_1, g~_t = 0 on the first k rounds, u* = -D sign(S) e_1.
LowerBoundInstance gen_lb_theorem2(std::int64_t T, std::int64_t k, double D, std::uint64_t seed,
                                   std::size_t dim = 1);

/// E|z_1 + ... + z_T| over uniform signs, by enumeration of all 2^T
/// sequences. Refuses T > 20.
double random_seq_expectation(int T);

/// g~_t = e_1, u* = 2 eps e^T e_1; on the last k rounds g_t = g~_t - u*/||u*||.
/// Refuses T > 30.
LowerBoundInstance gen_lb_origin(std::int64_t T, std::int64_t k, double epsilon, std::size_t dim = 1);

/// Uncorrupted base stream: e_1-biased random gradients with ||g|| <= G.
GradientStreams gen_iid_base(std::int64_t T, double G, std::uint64_t seed, std::size_t dim);

/// Base stream with k random rounds replaced by outliers of norm 100 G.
GradientStreams gen_iid_random(std::int64_t T, std::int64_t k, double G, std::uint64_t seed,
                               std::size_t dim);

struct DroDraw {
  GradientStreams streams;
  std::vector<double> weights;  // p in the simplex
  double total_variation = 0.0; // 1/2 sum |p_t - 1/T|
};

/// g~_t = T p_t g_t with p: boost k random coordinates by a factor 2 and
/// renormalize. Throws if the draw violates TV(p, uniform) <= k / T.
DroDraw gen_dro_reweight(std::int64_t k, const std::vector<Vector>& base, std::uint64_t seed);

/// Build the gradient source described by a spec; oblivious kinds are
/// materialized up front.
std::unique_ptr<Adversary> make_adversary(const AdversarySpec& spec);

/// Krichevsky-Trofimov coin-betting learner in one dimension:
///   w_{t+1} = (sum -g_i) / (t + 1) * (eps + sum -g_i w_i).
class KTBettor : public OnlineLearner {
 public:
  explicit KTBettor(double epsilon = 1.0);

  Vector predict() const override { return Vector{w_}; }
  void observe(const Vector& g, double hint = 1.0) override;
  void reset() override;
  std::size_t dim() const override { return 1; }

  double wealth() const { return wealth_; }
  std::int64_t t() const { return t_; }

 private:
  double epsilon_;
  double w_ = 0.0;
  double sum_neg_g_ = 0.0;
  double wealth_;
  std::int64_t t_ = 0;
};

}  // namespace robust_oco
