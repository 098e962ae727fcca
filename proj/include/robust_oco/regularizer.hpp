#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "robust_oco/vector.hpp"

namespace robust_oco {

/// exp(e * ln x) with 0^0 = 1 and 0^e = 0 for e > 0.
double pow_guarded(double x, double e);

/// ln(exp(a) + exp(b)) without overflow; -inf acts as the identity.
double log_add_exp(double a, double b);

/// c sigma(x) / S^(1-1/p) for a regularizer whose knot is ||w_t|| = knot and
/// whose running sum is S = exp(log_S).
double huber_value(double c, double p, double log_S, double knot, double x);

/// Huber-family composite regularizer
///
///   f_t(w) = c * sigma_t(w) / S_t^(1 - 1/p),
///   sigma_t(w) = ||w||^p                                   if ||w|| <= ||w_t||
///              = (p ||w|| - (p - 1) ||w_t||) ||w_t||^(p-1)  otherwise,
///   S_t = sum_{i <= t} ||w_i||^p + alpha^p.
///
/// Polynomial up to the most recent iterate norm, linear beyond it. Its sum
/// over the played iterates grows like c * max_t ||w_t||, while its cost at
/// a fixed comparator is only O~(c ||u||).
///
/// S_t is held as ln S_t throughout: with p = ln T and unconstrained
/// iterates, ||w||^p leaves double range long before anything else does.
class RegularizerState {
 public:
  RegularizerState(double c, double p, double alpha);

  double c() const { return c_; }
  double p() const { return p_; }
  double alpha() const { return alpha_; }
  double log_S() const { return log_S_; }
  double S() const { return std::exp(log_S_); }
  double last_iterate_norm() const { return last_norm_; }
  std::int64_t t() const { return t_; }

  /// f_t(w) for the current round t (S includes ||w_t||). Requires t >= 1.
  double evaluate(const Vector& w) const { return evaluate_norm(w.norm()); }
  double evaluate_norm(double w_norm) const;

  /// Account the next iterate: S += x^p, last norm := x, t += 1.
  void advance(double w_next_norm);

  /// R_{t+1}(x) = c p x^(p-1) / (S_t + x^p)^(1 - 1/p): radial derivative of
  /// next round's regularizer, evaluated at its own knot.
  double radial_subgradient(double x) const;

  /// Inverse of radial_subgradient. std::nullopt when y >= c p, where the
  /// map has no preimage (the caller has to bracket some other way).
  std::optional<double> radial_subgradient_inverse(double y) const;

 private:
  double c_;
  double p_;
  double alpha_;
  double log_S_;
  double last_norm_ = 0.0;
  std::int64_t t_ = 0;
};

struct SumBoundsReport {
  bool lower_ok = false;
  bool upper_ok = false;
  double sum_at_iterates = 0.0;    // sum_t f_t(w_t)
  double lower_bound = 0.0;        // c (max_t ||w_t|| - alpha)
  double sum_at_comparator = 0.0;  // sum_t f_t(u)
  double upper_bound = 0.0;        // 3 c ln T ||u|| [ln(1 + (||u||/alpha)^p) + 2]
};

/// Literal summation check of the two regularizer-sum inequalities with
/// p = ln T. Requires T = iterate_norms.size() >= 3.
SumBoundsReport check_sum_bounds(std::span<const double> iterate_norms, double comparator_norm,
                                 double c, double alpha);

}  // namespace robust_oco
