#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "robust_oco/vector.hpp"

namespace robust_oco {

/// FILTER: k-lag adaptive clipping threshold.
///
/// Starts at h = tau_G and clips every observed gradient to norm h. Once
/// k + 1 gradients have exceeded the threshold since the last doubling, h
/// doubles and the exceedance counter resets. A gradient whose norm equals
/// h exactly passes unclipped.
///
/// The pseudocode triggers on n == k; the k + 1 count is the one the
/// threshold bound h <= max(tau_G, 4G) needs, since at most k observed
/// gradients can be that large under the corruption budget.
class FilterState {
 public:
  FilterState(double tau_G, std::int64_t k);

  struct Step {
    Vector g_clipped;
    double h_used = 0.0;  // h_t
    double h_next = 0.0;  // h_{t+1}
    bool clipped = false;
    bool doubled = false;
  };

  Step step(const Vector& g_tilde);

  double h() const { return h_; }
  double tau_G() const { return tau_G_; }
  std::int64_t k() const { return k_; }
  std::int64_t exceedances() const { return n_; }
  std::int64_t pass_rounds() const { return pass_rounds_; }
  std::int64_t clip_rounds() const { return clip_rounds_; }
  std::int64_t doublings() const { return doublings_; }

 private:
  double tau_G_;
  std::int64_t k_;
  double h_;
  std::int64_t n_ = 0;
  std::int64_t pass_rounds_ = 0;
  std::int64_t clip_rounds_ = 0;
  std::int64_t doublings_ = 0;
};

/// Per-round record kept by callers that want to audit the filter.
struct FilterTrace {
  std::vector<double> thresholds;    // h_t used at round t
  std::vector<double> output_norms;  // ||g~^c_t||
  double final_h = 0.0;              // h_{T+1}
  std::int64_t clip_rounds = 0;
  std::int64_t doublings = 0;
  double tau_G = 0.0;
  std::int64_t k = 0;

  void record(const FilterState::Step& s);
};

struct LemmaVerdict {
  bool ok = true;
  std::string violated;  // name of the first failing property

  void fail(const std::string& what) {
    if (ok) violated = what;
    ok = false;
  }
};

/// Audit a filter run against its threshold properties for a stream whose
/// true gradients are bounded by G and satisfy the big-round budget k:
///   (1) h nondecreasing, (2) every output norm <= its round's h,
///   (3) h_{T+1} <= max(tau_G, 4G),
///   (4) clip_rounds <= (k + 1) max(ceil(log2(8G / tau_G)), 1).
LemmaVerdict check_filter_lemma(const FilterTrace& trace, double G);

}  // namespace robust_oco
