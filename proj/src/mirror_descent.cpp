#include "robust_oco/mirror_descent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace robust_oco {

namespace {

double psi_prime_of_F(double F, double V, double h) {
  if (h * std::sqrt(F) <= std::sqrt(V)) return 2.0 * std::sqrt(V * F);
  return h * F + V / h;
}

double wealth_scale(double epsilon, double B) {
  const double lb = std::max(std::log(B), 1.0);
  return epsilon / (std::sqrt(B) * lb * lb);
}

constexpr int kMaxBisection = 200;

}  // namespace

double psi_prime(double x, double V, double h, double a) {
  return psi_prime_of_F(std::log1p(x / a), V, h);
}

double link_value(double x, double V, double h, double a, const RegularizerState& reg) {
  return 3.0 * psi_prime(x, V, h, a) + reg.radial_subgradient(x);
}

bool link_first_branch(double theta_norm, double V, double h, double a, const RegularizerState& reg) {
  const double x_star = a * std::expm1(V / (h * h));
  const double r_star = std::isfinite(x_star) ? reg.radial_subgradient(x_star) : reg.c() * reg.p();
  return theta_norm <= 6.0 * V / h + r_star;
}

double link_value_branch(double x, double V, double h, double a, const RegularizerState& reg,
                         bool first_branch) {
  const double F = std::log1p(x / a);
  const double psi = first_branch ? 6.0 * std::sqrt(V * F) : 3.0 * h * F + 3.0 * V / h;
  return psi + reg.radial_subgradient(x);
}

double link_inverse_solve(double theta_norm, double V, double h, double a,
                          const RegularizerState& reg) {
  if (!(theta_norm >= 0.0) || !std::isfinite(theta_norm))
    throw NumericalError("link_inverse_solve: dual norm must be finite and >= 0");
  if (theta_norm <= link_value(0.0, V, h, a, reg)) return 0.0;

  // 3 Psi'(x) = y has the closed-form preimage below; L >= 3 Psi' so the
  // root lies left of it. Same argument for R.
  const double y3 = theta_norm / 3.0;
  double F_hi = (y3 <= 2.0 * V / h) ? y3 * y3 / (4.0 * V) : (y3 - V / h) / h;
  if (auto xr = reg.radial_subgradient_inverse(theta_norm)) F_hi = std::min(F_hi, std::log1p(*xr / a));

  auto L_of_F = [&](double F) { return link_value(a * std::expm1(F), V, h, a, reg); };
  double lo = 0.0;
  double hi = F_hi;
  for (int it = 0; it < kMaxBisection; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (L_of_F(mid) < theta_norm ? lo : hi) = mid;
  }
  const double L_lo = L_of_F(lo);
  const double L_hi = L_of_F(hi);
  const double F = (std::abs(L_lo - theta_norm) <= std::abs(L_hi - theta_norm)) ? lo : hi;
  const double x = a * std::expm1(F);
  if (!std::isfinite(x)) throw NumericalError("link_inverse_solve: iterate norm overflow");
  const double resid = std::abs(L_of_F(F) - theta_norm);
  if (resid > 1e-9 * std::max(1.0, theta_norm))
    throw NumericalError("link_inverse_solve: bisection did not converge");
  return x;
}

MirrorDescent::MirrorDescent(std::size_t dim, MirrorDescentParams params)
    : dim_(dim), params_(params), reg_(params.c, params.p, params.alpha) {
  if (dim == 0) throw std::invalid_argument("mirror descent: dim must be >= 1");
  if (!(params.epsilon > 0.0)) throw std::invalid_argument("mirror descent: epsilon must be > 0");
  if (!(params.initial_hint > 0.0)) throw std::invalid_argument("mirror descent: hint must be > 0");
  reset();
}

void MirrorDescent::reset() {
  theta_ = Vector(dim_);
  w_ = Vector(dim_);
  C_ = 0.0;
  N_ = 4.0;
  B_ = 4.0 * N_;
  h_ = params_.initial_hint;
  V_ = h_ * h_ + C_;
  a_ = wealth_scale(params_.epsilon, B_);
  reg_ = RegularizerState(params_.c, params_.p, params_.alpha);
  reg_.advance(0.0);  // w_1 = 0
}

Vector MirrorDescent::mirror_gradient(const Vector& w) const {
  const double n = w.norm();
  if (n == 0.0) return Vector(w.dim());
  return w * (3.0 * psi_prime(n, V_, h_, a_) / n);
}

void MirrorDescent::observe(const Vector& g, double hint_next) {
  w_.require_same_dim(g);
  require_finite(g, "gradient");
  require_finite(hint_next, "hint");
  const double gn2 = g.squared_norm();
  if (std::sqrt(gn2) > h_ * (1.0 + 1e-9))
    throw std::logic_error("mirror descent: gradient norm exceeds the current hint");
  if (hint_next < h_) throw std::logic_error("mirror descent: hints must be nondecreasing");

  theta_ = mirror_gradient(w_) - g;

  C_ += gn2;
  B_ += 4.0 * N_;
  N_ += gn2 / (h_ * h_);
  h_ = hint_next;
  V_ = h_ * h_ + C_;
  a_ = wealth_scale(params_.epsilon, B_);

  const double tn = theta_.norm();
  const double x = tn > 0.0 ? link_inverse_solve(tn, V_, h_, a_, reg_) : 0.0;
  w_ = x > 0.0 ? theta_ * (x / tn) : Vector(dim_);
  require_finite(w_, "iterate");
  reg_.advance(x);
}

}  // namespace robust_oco
