#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "robust_oco/core.hpp"
#include "robust_oco/epigraph.hpp"
#include "robust_oco/filter.hpp"
#include "robust_oco/mirror_descent.hpp"
#include "robust_oco/regularizer.hpp"
#include "robust_oco/tracker.hpp"

namespace robust_oco {

enum class ProtocolMode { known_G, unknown_G_case1, unknown_G_case2, custom };

std::string to_string(ProtocolMode m);
ProtocolMode protocol_mode_from_string(const std::string& s);

/// Horizon assumed for p = ln T when no horizon is configured.
inline constexpr double kStreamingHorizon = 1e6;

struct ProtocolConfig {
  ProtocolMode mode = ProtocolMode::known_G;
  std::size_t dim = 1;
  double epsilon = 1.0;
  std::int64_t k = 0;
  std::optional<double> G;            // read by known_G only
  double tau_G = 1.0;
  double tau_D = 1.0;
  double c = 0.0;
  double gamma_alpha = 1.0;
  double gamma_beta = 0.0;
  std::optional<std::int64_t> T;      // horizon; drives p = ln T
  std::optional<double> p;            // explicit override of ln T
  std::optional<double> alpha_offset; // alpha of the Huber term

  friend bool operator==(const ProtocolConfig&, const ProtocolConfig&) = default;
};

/// Fill in the parameters a preset fixes:
///   known_G: c = kG, p = ln T, alpha = eps / k (k = 0 disables the Huber term)
///   unknown_G_case1: c = k tau_G, gamma_beta = k, gamma_alpha = 1, tau_D = eps / k
///   unknown_G_case2: c = tau_G, gamma_beta = k^2, gamma_alpha = k + 1, tau_D = 1
///   unknown modes: alpha = eps tau_G / c
/// custom keeps c, gamma_*, tau_D as given. Unknown-G modes drop G.
ProtocolConfig resolve_preset(ProtocolConfig cfg);

/// Per-round snapshot of the composite regularizer r_t = f_t + a_t ||.||^2,
/// enough to evaluate r_t at any point after the fact.
struct RegularizerSnapshot {
  double log_S = 0.0;
  double iterate_norm = 0.0;
  double a = 0.0;
};

/// error - correction + bias + composite = R_T(u), where
///   error      = sum <g_t - g~c_t, w_t>
///   correction = sum r_t(w_t)
///   bias       = <sum (g_t - g~c_t), -u> + sum r_t(u)
///   composite  = sum <g~c_t, w_t - u> + r_t(w_t) - r_t(u)
struct DecompositionLedger {
  double error_term = 0.0;
  double correction_term = 0.0;
  double bias_term = 0.0;
  double composite_term = 0.0;
  double true_regret = 0.0;

  double reconstructed() const { return error_term - correction_term + bias_term + composite_term; }
  /// |reconstructed - true_regret| over the magnitude of the pieces.
  double identity_residual() const;
};

struct RoundInfo {
  std::int64_t t = 0;
  Vector w;          // played w_t
  Vector g_clipped;  // g~c_t
  double h = 0.0;    // h_t
  double h_next = 0.0;
  double z = 0.0;    // z_t (0 in known-G mode)
  double alpha = 0.0;
  double beta = 0.0;
  bool clipped = false;
  double regularizer_at_w = 0.0;  // r_t(w_t)
  Vector w_next;
};

/// Clip the observed gradient, hand it with the next threshold to a base
/// learner, and account the regret decomposition. Known-G uses a fixed
/// threshold G and the mirror-descent learner; the unknown-G modes drive the
/// threshold with FILTER, the quadratic weights with FILTER/TRACKER, and use
/// the epigraph learner.
class Protocol {
 public:
  explicit Protocol(ProtocolConfig cfg);

  const ProtocolConfig& config() const { return cfg_; }
  Vector predict() const;
  std::size_t dim() const { return cfg_.dim; }
  std::int64_t round() const { return t_; }

  /// `g_true`, when supplied, is used for the true-gradient ledgers; a
  /// simulation-only facility. Without it the observed gradient stands in.
  RoundInfo round(const Vector& g_tilde, const std::optional<Vector>& g_true = std::nullopt);

  /// Decomposition against comparator u over the rounds so far; r_t(u) is
  /// evaluated from the recorded regularizer snapshots.
  DecompositionLedger decomposition(const Vector& u) const;

  double true_regret(const Vector& u) const;
  double observed_regret(const Vector& u) const;

  const std::vector<RegularizerSnapshot>& snapshots() const { return snapshots_; }
  const std::optional<FilterState>& filter() const { return filter_; }
  const std::optional<TrackerState>& tracker() const { return tracker_; }
  const std::optional<EpigraphLearner>& epigraph() const { return epigraph_; }
  const std::optional<MirrorDescent>& mirror_descent() const { return md_; }

  /// Evaluate r_t at a point of norm x and squared norm x^2 from a snapshot.
  double regularizer_value(const RegularizerSnapshot& s, double x) const;

 private:
  bool known_G() const { return cfg_.mode == ProtocolMode::known_G; }

  ProtocolConfig cfg_;
  std::int64_t t_ = 0;
  RegularizerState reg_;
  std::optional<MirrorDescent> md_;
  std::optional<EpigraphLearner> epigraph_;
  std::optional<FilterState> filter_;
  std::optional<TrackerState> tracker_;
  QuadWeights weights_;
  std::vector<RegularizerSnapshot> snapshots_;

  // running sums
  Vector sum_g_true_;
  Vector sum_g_obs_;
  Vector sum_g_clip_;
  double sum_gtrue_w_ = 0.0;
  double sum_gobs_w_ = 0.0;
  double sum_gclip_w_ = 0.0;
  double sum_r_w_ = 0.0;
};

/// Uniform average of the iterates (online-to-batch conversion).
Vector online_to_batch(std::span<const Vector> iterates);

}  // namespace robust_oco
