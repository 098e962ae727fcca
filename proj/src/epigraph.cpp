#include "robust_oco/epigraph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace robust_oco {

namespace {

constexpr int kMaxProjectionIterations = 300;

// s (h^2 + 2 gamma^2 (s^2 - y_hat)) - h^2 r, together with the magnitude of
// its terms for a relative residual
struct Stationarity {
  double value;
  double scale;
};

Stationarity stationarity(double s, double r, double y_hat, double h, double gamma) {
  const double h2 = h * h;
  const double g2 = 2.0 * gamma * gamma;
  const double value = s * (h2 + g2 * (s * s - y_hat)) - h2 * r;
  const double scale = std::max({h2 * r, h2 * s, g2 * s * s * s, g2 * s * std::abs(y_hat)});
  return {value, scale};
}

}  // namespace

QuadWeights::Weights QuadWeights::compute(bool filter_doubled, bool tracker_doubled) {
  Weights out;
  out.alpha = filter_doubled ? gamma_alpha : 0.0;
  if (tracker_doubled) {
    ++beta_denominator;
    out.beta = gamma_beta / static_cast<double>(beta_denominator);
  }
  return out;
}

EpigraphPoint weighted_project(const EpigraphPoint& hat, double h, double gamma) {
  if (!(h > 0.0) || !(gamma > 0.0)) throw std::invalid_argument("weighted_project: weights must be > 0");
  require_finite(hat.w, "projection input");
  require_finite(hat.y, "projection input");
  const double r = hat.w.norm();
  if (hat.y >= r * r) return hat;
  if (r == 0.0) return {Vector(hat.w.dim()), 0.0};

  double lo = std::sqrt(std::max(hat.y, 0.0));
  double hi = r;
  for (int it = 0; it < kMaxProjectionIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (stationarity(mid, r, hat.y, h, gamma).value < 0.0 ? lo : hi) = mid;
  }
  const auto at_lo = stationarity(lo, r, hat.y, h, gamma);
  const auto at_hi = stationarity(hi, r, hat.y, h, gamma);
  const double s = std::abs(at_lo.value) <= std::abs(at_hi.value) ? lo : hi;
  const auto st = stationarity(s, r, hat.y, h, gamma);
  if (std::abs(st.value) > 1e-9 * st.scale)
    throw NumericalError("weighted_project: root finder did not converge");
  EpigraphPoint out{hat.w * (s / r), s * s};
  out.y = std::max(out.y, out.w.squared_norm());
  return out;
}

double projection_residual(const EpigraphPoint& hat, const EpigraphPoint& proj, double h,
                           double gamma) {
  const double r = hat.w.norm();
  if (hat.y >= r * r) return 0.0;
  const double s = proj.w.norm();
  const auto st = stationarity(s, r, hat.y, h, gamma);
  return st.scale > 0.0 ? std::abs(st.value) / st.scale : std::abs(st.value);
}

double dual_form(const Vector& dw, double dy, double h, double gamma) {
  return dw.squared_norm() / (h * h) + dy * dy / (gamma * gamma);
}

Correction correction_direction(const EpigraphPoint& hat, const EpigraphPoint& proj, double h,
                                double gamma, const Vector& g_clipped, double a_t) {
  Correction out{Vector(hat.w.dim()), 0.0};
  const Vector dw = hat.w - proj.w;
  const double dy = hat.y - proj.y;
  const double d = h * h * dw.squared_norm() + gamma * gamma * dy * dy;
  if (d == 0.0) return out;
  const double scale = dual_form(g_clipped, a_t, h, gamma) / std::sqrt(d);
  out.delta_w = dw * (h * h * scale);
  out.delta_y = gamma * gamma * dy * scale;
  return out;
}

EpigraphLearner::EpigraphLearner(std::size_t dim, EpigraphParams params)
    : params_(params),
      gamma_(params.gamma_alpha + params.gamma_beta),
      h_(params.tau_G),
      learner_w_(dim, MirrorDescentParams{params.epsilon, 2.0 * params.tau_G, params.c, params.p,
                                          params.alpha}),
      learner_y_(1, MirrorDescentParams{params.epsilon,
                                        1.5 * (params.gamma_alpha + params.gamma_beta), 0.0, 1.0,
                                        1.0}) {
  if (!(gamma_ > 0.0)) throw std::invalid_argument("epigraph: gamma_alpha + gamma_beta must be > 0");
  refresh_played();
}

void EpigraphLearner::refresh_played() {
  hat_ = {learner_w_.predict(), learner_y_.predict()[0]};
  played_ = weighted_project(hat_, h_, gamma_);
}

EpigraphLearner::StepInfo EpigraphLearner::observe(const Vector& g_clipped, double h_next,
                                                   double a_t) {
  StepInfo info;
  info.correction = correction_direction(hat_, played_, h_, gamma_, g_clipped, a_t);
  info.fed_w = (g_clipped + info.correction.delta_w) * 0.5;
  info.fed_y = 0.5 * (a_t + info.correction.delta_y);
  learner_w_.observe(info.fed_w, 2.0 * h_next);
  learner_y_.observe(Vector{info.fed_y}, 1.5 * gamma_);
  h_ = h_next;
  refresh_played();
  return info;
}

}  // namespace robust_oco
