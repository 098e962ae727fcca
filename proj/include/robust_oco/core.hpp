#pragma once

#include <cstdint>

#include "robust_oco/vector.hpp"

namespace robust_oco {

/// Rescale g_tilde to norm at most h, preserving direction. The zero vector
/// maps to itself.
Vector clip(const Vector& g_tilde, double h);

/// Tallies of how far an observed gradient stream strays from the true one.
/// `big_rounds` counts rounds with ||g - g~|| >= G; `deviation_sum`
/// accumulates min(||g - g~||, G).
struct CorruptionLedger {
  std::int64_t count_corrupted = 0;
  std::int64_t big_rounds = 0;
  double deviation_sum = 0.0;
  double lipschitz_G = 1.0;

  explicit CorruptionLedger(double G = 1.0);

  void update(const Vector& g_true, const Vector& g_tilde);

  /// k_general = deviation_sum / G
  double normalized_deviation() const { return deviation_sum / lipschitz_G; }
};

CorruptionLedger budget_update(CorruptionLedger ledger, const Vector& g_true,
                               const Vector& g_tilde);

/// Linearized regret against a fixed comparator, measured with the true and
/// with the observed gradients, plus an optional loss-based regret.
struct RegretLedger {
  Vector comparator;
  double true_regret_linear = 0.0;
  double observed_regret_linear = 0.0;
  double loss_regret = 0.0;

  explicit RegretLedger(Vector u) : comparator(std::move(u)) {}

  void update(const Vector& w, const Vector& g_true, const Vector& g_observed);
  void add_loss(double loss_at_w, double loss_at_u) { loss_regret += loss_at_w - loss_at_u; }
};

RegretLedger regret_update(RegretLedger ledger, const Vector& w, const Vector& g_true,
                           const Vector& g_observed);

/// Predict/observe contract shared by every learner. `hint` is the gradient
/// norm bound for the next round; known-G callers pass G every round.
class OnlineLearner {
 public:
  virtual ~OnlineLearner() = default;
  virtual Vector predict() const = 0;
  virtual void observe(const Vector& gradient, double hint) = 0;
  virtual void reset() = 0;
  virtual std::size_t dim() const = 0;
};

}  // namespace robust_oco
