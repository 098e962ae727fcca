#include "robust_oco/regularizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace robust_oco {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }
}  // namespace

double pow_guarded(double x, double e) {
  if (x == 0.0) return e == 0.0 ? 1.0 : 0.0;
  return std::exp(e * std::log(x));
}

double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

RegularizerState::RegularizerState(double c, double p, double alpha)
    : c_(c), p_(p), alpha_(alpha), log_S_(p * std::log(alpha)) {
  if (!(c >= 0.0)) throw std::invalid_argument("regularizer: c must be >= 0");
  if (!(p >= 1.0)) throw std::invalid_argument("regularizer: p must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("regularizer: alpha must be > 0");
}

double huber_value(double c, double p, double log_S, double knot, double x) {
  if (c == 0.0 || x == 0.0) return 0.0;
  const double shrink = (1.0 - 1.0 / p) * log_S;
  if (x <= knot) return c * std::exp(p * std::log(x) - shrink);
  // linear branch: knot^(p-1) / S^(1-1/p) <= 1 because S >= knot^p
  const double slope =
      (p == 1.0) ? 1.0 : (knot == 0.0 ? 0.0 : std::exp((p - 1.0) * std::log(knot) - shrink));
  return c * (p * x - (p - 1.0) * knot) * slope;
}

double RegularizerState::evaluate_norm(double x) const {
  if (t_ < 1) throw std::logic_error("regularizer: evaluate before the first advance");
  return huber_value(c_, p_, log_S_, last_norm_, x);
}

void RegularizerState::advance(double x) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw NumericalError("regularizer: iterate norm must be finite and >= 0");
  log_S_ = log_add_exp(log_S_, p_ * safe_log(x));
  last_norm_ = x;
  ++t_;
}

double RegularizerState::radial_subgradient(double x) const {
  if (!(x >= 0.0)) throw std::invalid_argument("radial_subgradient: x must be >= 0");
  if (c_ == 0.0) return 0.0;
  if (p_ == 1.0) return c_;
  if (x == 0.0) return 0.0;
  const double lx = std::log(x);
  const double denom = (1.0 - 1.0 / p_) * log_add_exp(log_S_, p_ * lx);
  return c_ * p_ * std::exp((p_ - 1.0) * lx - denom);
}

std::optional<double> RegularizerState::radial_subgradient_inverse(double y) const {
  if (!(y >= 0.0)) throw std::invalid_argument("radial_subgradient_inverse: y must be >= 0");
  if (y == 0.0) return 0.0;
  const double cap = c_ * p_;
  if (y >= cap) return std::nullopt;
  // p = 1: R is the constant c on (0, inf); any y < c sits in the
  // subdifferential at the origin
  if (p_ == 1.0) return 0.0;
  // with r = y / (c p) and q = p / (p - 1):  x^p = S r^q / (1 - r^q)
  const double q = p_ / (p_ - 1.0);
  const double log_rq = q * std::log(y / cap);
  const double log_xp = log_S_ + log_rq - std::log(-std::expm1(log_rq));
  return std::exp(log_xp / p_);
}

SumBoundsReport check_sum_bounds(std::span<const double> iterate_norms, double comparator_norm,
                                 double c, double alpha) {
  const auto T = static_cast<double>(iterate_norms.size());
  if (iterate_norms.size() < 3) throw std::invalid_argument("check_sum_bounds: need T >= 3");
  const double p = std::log(T);
  RegularizerState state(c, p, alpha);
  SumBoundsReport rep;
  double max_norm = 0.0;
  for (double n : iterate_norms) {
    state.advance(n);
    rep.sum_at_iterates += state.evaluate_norm(n);
    rep.sum_at_comparator += state.evaluate_norm(comparator_norm);
    max_norm = std::max(max_norm, n);
  }
  rep.lower_bound = c * (max_norm - alpha);
  // ln(1 + (u/alpha)^p) evaluated as a softplus of p ln(u/alpha)
  double log_term = 0.0;
  if (comparator_norm > 0.0) {
    const double z = p * std::log(comparator_norm / alpha);
    log_term = z > 30.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
  }
  rep.upper_bound = 3.0 * c * std::log(T) * comparator_norm * (log_term + 2.0);
  // summation rounding only; the inequalities themselves are not relaxed
  const double slack = 1e-12;
  rep.lower_ok = rep.sum_at_iterates >= rep.lower_bound - slack * std::max(1.0, std::abs(rep.lower_bound));
  rep.upper_ok = rep.sum_at_comparator <= rep.upper_bound + slack * std::max(1.0, rep.upper_bound);
  return rep;
}

}  // namespace robust_oco
