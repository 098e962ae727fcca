#include "robust_oco/filter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "robust_oco/core.hpp"

namespace robust_oco {

FilterState::FilterState(double tau_G, std::int64_t k) : tau_G_(tau_G), k_(k), h_(tau_G) {
  if (!(tau_G > 0.0)) throw std::invalid_argument("filter: tau_G must be > 0");
  if (k < 0) throw std::invalid_argument("filter: k must be >= 0");
}

FilterState::Step FilterState::step(const Vector& g_tilde) {
  Step out;
  out.h_used = h_;
  if (g_tilde.norm() > h_) {
    out.g_clipped = clip(g_tilde, h_);
    out.clipped = true;
    ++clip_rounds_;
    if (++n_ == k_ + 1) {
      ++doublings_;
      h_ = std::ldexp(tau_G_, static_cast<int>(doublings_));
      n_ = 0;
      out.doubled = true;
    }
  } else {
    out.g_clipped = g_tilde;
    ++pass_rounds_;
  }
  out.h_next = h_;
  return out;
}

void FilterTrace::record(const FilterState::Step& s) {
  thresholds.push_back(s.h_used);
  output_norms.push_back(s.g_clipped.norm());
  final_h = s.h_next;
  if (s.clipped) ++clip_rounds;
  if (s.doubled) ++doublings;
}

LemmaVerdict check_filter_lemma(const FilterTrace& trace, double G) {
  LemmaVerdict v;
  for (std::size_t t = 1; t < trace.thresholds.size(); ++t)
    if (trace.thresholds[t] < trace.thresholds[t - 1]) v.fail("(1) threshold nondecreasing");
  if (!trace.thresholds.empty() && trace.final_h < trace.thresholds.back())
    v.fail("(1) threshold nondecreasing");
  for (std::size_t t = 0; t < trace.thresholds.size(); ++t)
    if (trace.output_norms[t] > trace.thresholds[t]) v.fail("(2) output norm <= h_t");
  if (trace.final_h > std::max(trace.tau_G, 4.0 * G)) v.fail("(3) h_{T+1} <= max(tau_G, 4G)");
  const double doublings_allowed = std::max(std::ceil(std::log2(8.0 * G / trace.tau_G)), 1.0);
  if (static_cast<double>(trace.clip_rounds) > static_cast<double>(trace.k + 1) * doublings_allowed)
    v.fail("(4) clip_rounds <= (k+1) max(ceil(log2(8G/tau)), 1)");
  return v;
}

}  // namespace robust_oco
