#pragma once

#include <cstdint>

#include "robust_oco/mirror_descent.hpp"

namespace robust_oco {

/// Point (w, y) of R^{d+1}; the feasible set is the epigraph y >= ||w||^2.
struct EpigraphPoint {
  Vector w;
  double y = 0.0;

  bool feasible() const { return y >= w.squared_norm(); }
};

/// Weights of the in-time quadratic penalty a_t ||w||^2 with a_t = alpha_t + beta_t:
///   alpha_t = gamma_alpha * 1{threshold h doubled at t}
///   beta_t  = gamma_beta * 1{magnitude z doubled at t} / (1 + #z-doublings up to t)
struct QuadWeights {
  double gamma_alpha = 0.0;
  double gamma_beta = 0.0;
  std::int64_t beta_denominator = 1;

  double gamma() const { return gamma_alpha + gamma_beta; }

  struct Weights {
    double alpha = 0.0;
    double beta = 0.0;
    double sum() const { return alpha + beta; }
  };

  /// Flags come from the same round's filter and tracker steps.
  Weights compute(bool filter_doubled, bool tracker_doubled);
};

/// Minimizer of h^2 ||w - w_hat||^2 + gamma^2 (y - y_hat)^2 over y >= ||w||^2.
/// Exterior points land on the parabola at w = s w_hat / ||w_hat||, y = s^2,
/// where s is the root of s (h^2 + 2 gamma^2 (s^2 - y_hat)) = h^2 ||w_hat||
/// inside [sqrt(max(y_hat, 0)), ||w_hat||]; the cubic is increasing there.
EpigraphPoint weighted_project(const EpigraphPoint& hat, double h, double gamma);

/// Relative residual of the boundary stationarity equation at a projected
/// point. Zero for interior (identity) projections.
double projection_residual(const EpigraphPoint& hat, const EpigraphPoint& proj, double h,
                           double gamma);

struct Correction {
  Vector delta_w;
  double delta_y = 0.0;
};

/// Gradient correction for the constrained reduction: the unit dual-form
/// direction (h^2 dw, gamma^2 dy) / sqrt(h^2 ||dw||^2 + gamma^2 dy^2) scaled by
/// ||g||^2 / h^2 + a^2 / gamma^2. Zero when hat is already feasible.
Correction correction_direction(const EpigraphPoint& hat, const EpigraphPoint& proj, double h,
                                double gamma, const Vector& g_clipped, double a_t);

/// Dual form ||dw||^2 / h^2 + dy^2 / gamma^2.
double dual_form(const Vector& dw, double dy, double h, double gamma);

struct EpigraphParams {
  double epsilon = 1.0;
  double tau_G = 1.0;   // h_1 of the filter feeding this learner
  double c = 0.0;       // Huber scale for the w-learner
  double p = 1.0;
  double alpha = 1.0;
  double gamma_alpha = 1.0;
  double gamma_beta = 0.0;
};

/// Unknown-G base learner: a d-dimensional mirror-descent learner for w and
/// a scalar one for y, coupled through the weighted projection onto the
/// epigraph and a feedback correction, so that quadratic penalties a_t ||w||^2
/// revealed after w_t is played can be handled as linear losses in y.
class EpigraphLearner {
 public:
  EpigraphLearner(std::size_t dim, EpigraphParams params);

  /// Played point (w_t, y_t), already projected with h_t.
  const EpigraphPoint& played() const { return played_; }
  /// Unprojected sub-learner outputs (w^_t, y^_t).
  const EpigraphPoint& hat() const { return hat_; }
  Vector predict() const { return played_.w; }
  double gamma() const { return gamma_; }
  double h() const { return h_; }

  struct StepInfo {
    Correction correction;
    Vector fed_w;        // (g^c + delta_w) / 2
    double fed_y = 0.0;  // (a_t + delta_y) / 2
  };

  /// One round: g_clipped is the filter output for round t, h_next its
  /// threshold for t+1, a_t the quadratic weight revealed this round.
  StepInfo observe(const Vector& g_clipped, double h_next, double a_t);

  const MirrorDescent& w_learner() const { return learner_w_; }
  const MirrorDescent& y_learner() const { return learner_y_; }
  std::size_t dim() const { return learner_w_.dim(); }

 private:
  void refresh_played();

  EpigraphParams params_;
  double gamma_;
  double h_;
  MirrorDescent learner_w_;
  MirrorDescent learner_y_;
  EpigraphPoint hat_;
  EpigraphPoint played_;
};

}  // namespace robust_oco
