#include "robust_oco/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace robust_oco {

std::string to_string(ProtocolMode m) {
  switch (m) {
    case ProtocolMode::known_G: return "known_G";
    case ProtocolMode::unknown_G_case1: return "unknown_G_case1";
    case ProtocolMode::unknown_G_case2: return "unknown_G_case2";
    case ProtocolMode::custom: return "custom";
  }
  return "?";
}

ProtocolMode protocol_mode_from_string(const std::string& s) {
  if (s == "known_G" || s == "known_g") return ProtocolMode::known_G;
  if (s == "unknown_G_case1" || s == "unknown_g_case1") return ProtocolMode::unknown_G_case1;
  if (s == "unknown_G_case2" || s == "unknown_g_case2") return ProtocolMode::unknown_G_case2;
  if (s == "custom") return ProtocolMode::custom;
  throw std::invalid_argument("unknown protocol mode: " + s);
}

ProtocolConfig resolve_preset(ProtocolConfig cfg) {
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("protocol: epsilon must be > 0");
  if (cfg.k < 0) throw std::invalid_argument("protocol: k must be >= 0");
  if (cfg.dim == 0) throw std::invalid_argument("protocol: dim must be >= 1");
  if (!cfg.p) {
    const double horizon = cfg.T ? static_cast<double>(*cfg.T) : kStreamingHorizon;
    cfg.p = std::max(1.0, std::log(horizon));
  }
  const auto k = static_cast<double>(cfg.k);
  switch (cfg.mode) {
    case ProtocolMode::known_G: {
      if (!cfg.G || !(*cfg.G > 0.0)) throw std::invalid_argument("known_G mode requires G > 0");
      cfg.c = k * *cfg.G;
      cfg.alpha_offset = cfg.k > 0 ? cfg.epsilon / k : cfg.epsilon;
      cfg.tau_G = *cfg.G;
      return cfg;
    }
    case ProtocolMode::unknown_G_case1:
      cfg.c = k * cfg.tau_G;
      cfg.gamma_beta = k;
      cfg.gamma_alpha = 1.0;
      cfg.tau_D = cfg.k > 0 ? cfg.epsilon / k : cfg.epsilon;
      break;
    case ProtocolMode::unknown_G_case2:
      cfg.c = cfg.tau_G;
      cfg.gamma_beta = k * k;
      cfg.gamma_alpha = k + 1.0;
      cfg.tau_D = 1.0;
      break;
    case ProtocolMode::custom:
      break;
  }
  if (!(cfg.tau_G > 0.0) || !(cfg.tau_D > 0.0)) throw std::invalid_argument("protocol: tau_G, tau_D must be > 0");
  if (!cfg.alpha_offset) cfg.alpha_offset = cfg.c > 0.0 ? cfg.epsilon * cfg.tau_G / cfg.c : cfg.epsilon * cfg.tau_G;
  cfg.G.reset();
  return cfg;
}

double DecompositionLedger::identity_residual() const {
  const double scale = std::max({1.0, std::abs(true_regret), std::abs(error_term),
                                 std::abs(correction_term), std::abs(bias_term), std::abs(composite_term)});
  return std::abs(reconstructed() - true_regret) / scale;
}

Protocol::Protocol(ProtocolConfig cfg)
    : cfg_(resolve_preset(std::move(cfg))),
      reg_(cfg_.c, *cfg_.p, *cfg_.alpha_offset),
      sum_g_true_(cfg_.dim),
      sum_g_obs_(cfg_.dim),
      sum_g_clip_(cfg_.dim) {
  if (known_G()) {
    md_.emplace(cfg_.dim, MirrorDescentParams{cfg_.epsilon, *cfg_.G, cfg_.c, *cfg_.p, *cfg_.alpha_offset});
  } else {
    filter_.emplace(cfg_.tau_G, cfg_.k);
    tracker_.emplace(cfg_.tau_D);
    weights_.gamma_alpha = cfg_.gamma_alpha;
    weights_.gamma_beta = cfg_.gamma_beta;
    epigraph_.emplace(cfg_.dim, EpigraphParams{cfg_.epsilon, cfg_.tau_G, cfg_.c, *cfg_.p, *cfg_.alpha_offset,
                                               cfg_.gamma_alpha, cfg_.gamma_beta});
  }
}

Vector Protocol::predict() const { return known_G() ? md_->predict() : epigraph_->predict(); }

double Protocol::regularizer_value(const RegularizerSnapshot& s, double x) const {
  return huber_value(cfg_.c, *cfg_.p, s.log_S, s.iterate_norm, x) + s.a * x * x;
}

RoundInfo Protocol::round(const Vector& g_tilde, const std::optional<Vector>& g_true) {
  if (g_tilde.dim() != cfg_.dim) throw DimensionError("protocol: gradient dimension mismatch");
  if (g_true && g_true->dim() != cfg_.dim) throw DimensionError("protocol: true gradient dimension mismatch");
  require_finite(g_tilde, "observed gradient");
  if (g_true) require_finite(*g_true, "true gradient");

  RoundInfo info;
  info.t = ++t_;
  info.w = predict();
  const double w_norm = info.w.norm();

  double a_t = 0.0;
  if (known_G()) {
    info.h = info.h_next = *cfg_.G;
    info.g_clipped = clip(g_tilde, *cfg_.G);
    info.clipped = !(info.g_clipped == g_tilde);
  } else {
    const auto fs = filter_->step(g_tilde);
    const auto ts = tracker_->step(w_norm);
    const auto wts = weights_.compute(fs.doubled, ts.doubled);
    info.h = fs.h_used;
    info.h_next = fs.h_next;
    info.g_clipped = fs.g_clipped;
    info.clipped = fs.clipped;
    info.z = ts.z_used;
    info.alpha = wts.alpha;
    info.beta = wts.beta;
    a_t = wts.sum();
  }

  reg_.advance(w_norm);
  const RegularizerSnapshot snap{reg_.log_S(), w_norm, a_t};
  snapshots_.push_back(snap);
  info.regularizer_at_w = regularizer_value(snap, w_norm);

  const Vector& gt = g_true ? *g_true : g_tilde;
  sum_g_true_ += gt;
  sum_g_obs_ += g_tilde;
  sum_g_clip_ += info.g_clipped;
  sum_gtrue_w_ += dot(gt, info.w);
  sum_gobs_w_ += dot(g_tilde, info.w);
  sum_gclip_w_ += dot(info.g_clipped, info.w);
  sum_r_w_ += info.regularizer_at_w;

  if (known_G())
    md_->observe(info.g_clipped, *cfg_.G);
  else
    epigraph_->observe(info.g_clipped, info.h_next, a_t);

  info.w_next = predict();
  require_finite(info.w_next, "iterate");
  return info;
}

DecompositionLedger Protocol::decomposition(const Vector& u) const {
  u.require_same_dim(sum_g_true_);
  const double u_norm = u.norm();
  double sum_r_u = 0.0;
  for (const auto& s : snapshots_) sum_r_u += regularizer_value(s, u_norm);
  DecompositionLedger d;
  d.error_term = sum_gtrue_w_ - sum_gclip_w_;
  d.correction_term = sum_r_w_;
  d.bias_term = -dot(sum_g_true_ - sum_g_clip_, u) + sum_r_u;
  d.composite_term = sum_gclip_w_ - dot(sum_g_clip_, u) + sum_r_w_ - sum_r_u;
  d.true_regret = true_regret(u);
  return d;
}

double Protocol::true_regret(const Vector& u) const { return sum_gtrue_w_ - dot(sum_g_true_, u); }

double Protocol::observed_regret(const Vector& u) const { return sum_gobs_w_ - dot(sum_g_obs_, u); }

Vector online_to_batch(std::span<const Vector> iterates) {
  if (iterates.empty()) throw std::invalid_argument("online_to_batch: empty trace");
  Vector avg(iterates.front().dim());
  for (const auto& w : iterates) avg += w;
  return avg * (1.0 / static_cast<double>(iterates.size()));
}

}  // namespace robust_oco
