#pragma once

#include <cstdint>
#include <vector>

#include "robust_oco/filter.hpp"

namespace robust_oco {

/// TRACKER: doubling estimate of max_t ||w_t||. Whenever ||w_t|| strictly
/// exceeds z_t the threshold jumps to 2 ||w_t|| and a new epoch starts at t.
/// Only counters are kept; epoch membership is reconstructed from traces.
class TrackerState {
 public:
  explicit TrackerState(double tau_D);

  struct Step {
    double z_used = 0.0;  // z_t
    double z_next = 0.0;  // z_{t+1}
    bool doubled = false;
  };

  Step step(double w_norm);

  double z() const { return z_; }
  double tau_D() const { return tau_D_; }
  std::int64_t epoch_index() const { return epoch_index_; }
  std::int64_t epoch_start_round() const { return epoch_start_; }
  std::int64_t round() const { return round_; }
  bool doubled_this_round() const { return doubled_; }

 private:
  double tau_D_;
  double z_;
  std::int64_t epoch_index_ = 0;
  std::int64_t epoch_start_ = 1;
  std::int64_t round_ = 0;
  bool doubled_ = false;
};

struct TrackerTrace {
  double tau_D = 0.0;
  std::vector<double> norms;   // ||w_t||
  std::vector<double> z;       // z_t
  std::vector<bool> doubled;   // z_{t+1} != z_t
  double final_z = 0.0;        // z_{T+1}

  void record(double w_norm, const TrackerState::Step& s);
  std::int64_t epochs() const;
};

/// Audit a tracker run:
///   (1) N <= max(0, log2(2 max ||w_t|| / tau_D)) and epochs partition [T]
///       with boundaries exactly at doubling rounds,
///   (2) ||w_t|| <= tau_D throughout epoch 0,
///   (3) ||w_t|| <= 2 ||w_{t_n}|| throughout epoch n >= 1,
///   (4) z_{T+1} <= max(tau_D, 2 max ||w_t||), and z nondecreasing with
///       z_{t+1} in {z_t, 2 ||w_t||}.
LemmaVerdict check_tracker_lemma(const TrackerTrace& trace);

}  // namespace robust_oco
