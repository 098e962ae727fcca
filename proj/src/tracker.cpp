#include "robust_oco/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace robust_oco {

TrackerState::TrackerState(double tau_D) : tau_D_(tau_D), z_(tau_D) {
  if (!(tau_D > 0.0)) throw std::invalid_argument("tracker: tau_D must be > 0");
}

TrackerState::Step TrackerState::step(double w_norm) {
  if (!(w_norm >= 0.0) || !std::isfinite(w_norm))
    throw NumericalError("tracker: iterate norm must be finite and >= 0");
  ++round_;
  Step out;
  out.z_used = z_;
  doubled_ = w_norm > z_;
  if (doubled_) {
    z_ = 2.0 * w_norm;
    ++epoch_index_;
    epoch_start_ = round_;
  }
  out.doubled = doubled_;
  out.z_next = z_;
  return out;
}

void TrackerTrace::record(double w_norm, const TrackerState::Step& s) {
  norms.push_back(w_norm);
  z.push_back(s.z_used);
  doubled.push_back(s.doubled);
  final_z = s.z_next;
}

std::int64_t TrackerTrace::epochs() const {
  return static_cast<std::int64_t>(std::count(doubled.begin(), doubled.end(), true));
}

LemmaVerdict check_tracker_lemma(const TrackerTrace& trace) {
  LemmaVerdict v;
  const std::size_t T = trace.norms.size();
  const double max_norm = T ? *std::max_element(trace.norms.begin(), trace.norms.end()) : 0.0;

  // rebuild epochs from the trace itself: a round opens a new epoch exactly
  // when its norm exceeds the threshold in force
  std::int64_t n = 0;
  double anchor = 0.0;  // ||w_{t_n}||
  for (std::size_t t = 0; t < T; ++t) {
    const double z_next = (t + 1 < T) ? trace.z[t + 1] : trace.final_z;
    const bool exceeds = trace.norms[t] > trace.z[t];
    if (exceeds != trace.doubled[t]) v.fail("(1) epoch boundaries are the doubling rounds");
    if (exceeds) {
      ++n;
      anchor = trace.norms[t];
    }
    if (z_next != trace.z[t] && z_next != 2.0 * trace.norms[t])
      v.fail("(4) z_{t+1} in {z_t, 2||w_t||}");
    if (z_next < trace.z[t]) v.fail("(4) z nondecreasing");
    if (n == 0 && trace.norms[t] > trace.tau_D) v.fail("(2) epoch 0 stays within tau_D");
    if (n >= 1 && trace.norms[t] > 2.0 * anchor) v.fail("(3) epoch n within 2||w_{t_n}||");
  }
  if (n != trace.epochs()) v.fail("(1) epoch count");
  const double bound = max_norm > 0.0 ? std::max(0.0, std::log2(2.0 * max_norm / trace.tau_D)) : 0.0;
  if (static_cast<double>(n) > bound) v.fail("(1) N <= max(0, log2(2 max||w|| / tau_D))");
  if (trace.final_z > std::max(trace.tau_D, 2.0 * max_norm)) v.fail("(4) z_{T+1} <= max(tau_D, 2 max||w||)");
  if (!trace.z.empty() && trace.z.front() != trace.tau_D) v.fail("(4) z_1 = tau_D");
  return v;
}

}  // namespace robust_oco
