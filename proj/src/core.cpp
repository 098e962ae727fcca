#include "robust_oco/core.hpp"

#include <algorithm>

namespace robust_oco {

Vector clip(const Vector& g_tilde, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("clip: threshold must be positive");
  const double n = g_tilde.norm();
  if (n <= h) return g_tilde;
  Vector out = g_tilde * (h / n);
  // rounding can leave the norm a few ulps above h; shave until it is not,
  // so that clipping twice is a no-op
  while (out.norm() > h) out *= 1.0 - 0x1p-52;
  return out;
}

CorruptionLedger::CorruptionLedger(double G) : lipschitz_G(G) {
  if (!(G > 0.0)) throw std::invalid_argument("CorruptionLedger: G must be positive");
}

void CorruptionLedger::update(const Vector& g_true, const Vector& g_tilde) {
  g_true.require_same_dim(g_tilde);
  if (g_true == g_tilde) return;
  const double dev = distance(g_true, g_tilde);
  ++count_corrupted;
  if (dev >= lipschitz_G) ++big_rounds;
  deviation_sum += std::min(dev, lipschitz_G);
}

CorruptionLedger budget_update(CorruptionLedger ledger, const Vector& g_true,
                               const Vector& g_tilde) {
  ledger.update(g_true, g_tilde);
  return ledger;
}

void RegretLedger::update(const Vector& w, const Vector& g_true, const Vector& g_observed) {
  const Vector diff = w - comparator;
  true_regret_linear += dot(g_true, diff);
  observed_regret_linear += dot(g_observed, diff);
}

RegretLedger regret_update(RegretLedger ledger, const Vector& w, const Vector& g_true,
                           const Vector& g_observed) {
  ledger.update(w, g_true, g_observed);
  return ledger;
}

}  // namespace robust_oco
