#pragma once

#include "robust_oco/core.hpp"
#include "robust_oco/regularizer.hpp"

namespace robust_oco {

/// Psi'(x) = min_{eta <= 1/h} [ln(1 + x/a) / eta + eta V], in closed form:
/// 2 sqrt(V F) while h sqrt(F) <= sqrt(V), else h F + V / h, with
/// F = ln(1 + x/a).
double psi_prime(double x, double V, double h, double a);

/// Link function L(x) = 3 Psi'(x) + R(x) whose inverse maps the dual
/// accumulator norm back to the next iterate norm.
double link_value(double x, double V, double h, double a, const RegularizerState& reg);

/// Same function written per branch, selected by the explicit rule
/// ||theta|| <= 6V/h + R(x*), x* = a (exp(V/h^2) - 1).
bool link_first_branch(double theta_norm, double V, double h, double a, const RegularizerState& reg);
double link_value_branch(double x, double V, double h, double a, const RegularizerState& reg,
                         bool first_branch);

/// Unique x >= 0 with L(x) = theta_norm (x = 0 when theta_norm <= L(0)).
/// Bisection in F = ln(1 + x/a) over a bracket whose upper end is the
/// smaller of the exact Psi' preimage and the R preimage, both of which
/// upper-bound the root because each term of L is nonnegative.
/// Throws NumericalError if the residual exceeds 1e-9 max(1, theta_norm).
double link_inverse_solve(double theta_norm, double V, double h, double a,
                          const RegularizerState& reg);

struct MirrorDescentParams {
  double epsilon = 1.0;
  double initial_hint = 1.0;  // h_1
  double c = 0.0;             // Huber scale; 0 disables the composite term
  double p = 1.0;
  double alpha = 1.0;
};

/// Centered mirror descent with a composite Huber regularizer, accepting a
/// per-round gradient bound (hint). First prediction is the origin.
class MirrorDescent : public OnlineLearner {
 public:
  MirrorDescent(std::size_t dim, MirrorDescentParams params);

  Vector predict() const override { return w_; }
  /// Requires ||g|| <= current hint and hint_next >= current hint.
  void observe(const Vector& g, double hint_next) override;
  void reset() override;
  std::size_t dim() const override { return dim_; }

  const MirrorDescentParams& params() const { return params_; }
  const Vector& theta() const { return theta_; }
  double C() const { return C_; }
  double N_acc() const { return N_; }
  double B() const { return B_; }
  double V() const { return V_; }
  double a_scale() const { return a_; }
  double hint() const { return h_; }
  const RegularizerState& regularizer() const { return reg_; }

  /// grad psi_t(w) = 3 Psi'_t(||w||) w / ||w||, zero at the origin.
  Vector mirror_gradient(const Vector& w) const;

 private:
  std::size_t dim_;
  MirrorDescentParams params_;
  Vector theta_;
  double C_ = 0.0;
  double N_ = 4.0;
  double B_ = 16.0;
  double V_ = 0.0;
  double a_ = 0.0;
  double h_ = 0.0;
  RegularizerState reg_;
  Vector w_;
};

}  // namespace robust_oco
