#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "robust_oco/config.hpp"

namespace robust_oco {

struct TraceRecord {
  std::int64_t t = 0;
  Vector w;
  double g_norm = 0.0;
  double g_tilde_norm = 0.0;
  double g_clipped_norm = 0.0;
  double h = 0.0;  // 0 where the learner has no threshold
  double z = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  bool corrupted = false;
  double true_regret = 0.0;  // cumulative
  double observed_regret = 0.0;
};

struct RunSummary {
  Algorithm algorithm = Algorithm::known_g;
  AdversaryKind adversary = AdversaryKind::sign_flip_window;
  std::int64_t T = 0;
  std::int64_t k = 0;
  std::uint64_t seed = 0;
  double final_true_regret = 0.0;
  double final_observed_regret = 0.0;
  std::optional<DecompositionLedger> decomposition;  // protocol algorithms only
  CorruptionLedger budget;
  double wall_time_s = 0.0;
};

struct ExperimentTrace {
  std::vector<TraceRecord> rounds;
  RunSummary summary;
  Vector comparator;
};

/// Play one seeded run in memory. The seed drives the adversary; the
/// learners themselves are deterministic.
ExperimentTrace simulate(const ExperimentConfig& cfg, std::uint64_t seed);

/// simulate() with the first configured seed, then write
/// <output_path>/trace.csv and <output_path>/summary.csv.
ExperimentTrace run(const ExperimentConfig& cfg);

/// Trace columns; w_1..w_3 are blank beyond the dimension.
inline constexpr const char* kTraceHeader =
    "t,w_norm,w_1,w_2,w_3,g_norm,g_tilde_norm,g_clipped_norm,h,z,alpha,beta,corrupted,true_regret,"
    "observed_regret";
inline constexpr const char* kSummaryHeader =
    "algorithm,adversary,T,k,seed,final_true_regret,final_observed_regret,error_term,correction_term,"
    "bias_term,composite_term,identity_residual,count_corrupted,big_rounds,deviation_sum,wall_time_s";
inline constexpr const char* kSweepHeader =
    "algorithm,k,T,seed,regret_corrupted,regret_uncorrupted,ratio";

void write_trace_csv(std::ostream& out, const ExperimentTrace& trace);
void write_summary_csv(std::ostream& out, const std::vector<RunSummary>& rows);

struct SweepRow {
  Algorithm algorithm = Algorithm::known_g;
  std::int64_t k = 0;
  std::int64_t T = 0;
  std::uint64_t seed = 0;
  double regret_corrupted = 0.0;
  double regret_uncorrupted = 0.0;
  double ratio() const { return regret_corrupted / regret_uncorrupted; }
};

/// Every (algorithm, k, seed) cell with T = k^2 (and, for the sign-flip
/// adversary, the window starting at 3T/4), each paired with its
/// uncorrupted twin. Cells run in parallel; rows come back in grid order.
std::vector<SweepRow> sweep(const ExperimentConfig& cfg);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Configuration of one sweep cell.
ExperimentConfig sweep_cell(const ExperimentConfig& base, Algorithm a, std::int64_t k, bool corrupted);

}  // namespace robust_oco
