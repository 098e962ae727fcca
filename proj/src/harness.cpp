#include "robust_oco/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace robust_oco {

namespace {

struct Learner {
  std::optional<KTBettor> kt;
  std::optional<Protocol> protocol;

  Vector predict() const { return kt ? kt->predict() : protocol->predict(); }
};

Learner make_learner(const ExperimentConfig& cfg) {
  Learner l;
  if (cfg.algorithm == Algorithm::kt_bettor) {
    l.kt.emplace(cfg.protocol.epsilon);
    return l;
  }
  ProtocolConfig pc = cfg.protocol;
  pc.mode = protocol_mode_for(cfg.algorithm);
  if (pc.mode == ProtocolMode::known_G) {
    if (!pc.G) pc.G = cfg.adversary.G;
  } else {
    pc.G.reset();
  }
  l.protocol.emplace(pc);
  return l;
}

}  // namespace

ExperimentTrace simulate(const ExperimentConfig& cfg, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  AdversarySpec spec = cfg.adversary;
  spec.seed = seed;
  auto adversary = make_adversary(spec);
  Learner learner = make_learner(cfg);
  const std::size_t dim = cfg.algorithm == Algorithm::kt_bettor ? 1 : cfg.protocol.dim;
  if (spec.dim != dim) throw DimensionError("simulate: adversary and learner dimensions differ");

  ExperimentTrace trace;
  trace.comparator = cfg.comparator ? *cfg.comparator : adversary->comparator().value_or(Vector(dim));
  trace.comparator.require_same_dim(Vector(dim));
  RegretLedger regret(trace.comparator);
  CorruptionLedger budget(spec.G);

  const std::int64_t T = adversary->horizon();
  trace.rounds.reserve(static_cast<std::size_t>(T));
  for (std::int64_t t = 1; t <= T; ++t) {
    TraceRecord rec;
    rec.t = t;
    rec.w = learner.predict();
    const GradientPair gp = adversary->next(t, rec.w);
    if (!gp.g.all_finite() || !gp.g_tilde.all_finite())
      throw NumericalError("non-finite gradient at round " + std::to_string(t));
    rec.g_norm = gp.g.norm();
    rec.g_tilde_norm = gp.g_tilde.norm();
    rec.corrupted = gp.corrupted();
    try {
      if (learner.kt) {
        learner.kt->observe(gp.g_tilde);
        rec.g_clipped_norm = rec.g_tilde_norm;
      } else {
        const RoundInfo info = learner.protocol->round(gp.g_tilde, gp.g);
        rec.g_clipped_norm = info.g_clipped.norm();
        rec.h = info.h;
        rec.z = info.z;
        rec.alpha = info.alpha;
        rec.beta = info.beta;
      }
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " (round " + std::to_string(t) + ")");
    }
    regret.update(rec.w, gp.g, gp.g_tilde);
    budget.update(gp.g, gp.g_tilde);
    rec.true_regret = regret.true_regret_linear;
    rec.observed_regret = regret.observed_regret_linear;
    if (!std::isfinite(rec.true_regret) || !rec.w.all_finite())
      throw NumericalError("non-finite value at round " + std::to_string(t));
    trace.rounds.push_back(std::move(rec));
  }

  auto& s = trace.summary;
  s.algorithm = cfg.algorithm;
  s.adversary = spec.kind;
  s.T = T;
  s.k = spec.k;
  s.seed = seed;
  s.final_true_regret = regret.true_regret_linear;
  s.final_observed_regret = regret.observed_regret_linear;
  if (learner.protocol) s.decomposition = learner.protocol->decomposition(trace.comparator);
  s.budget = budget;
  s.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return trace;
}

void write_trace_csv(std::ostream& out, const ExperimentTrace& trace) {
  out << kTraceHeader << "\n";
  for (const auto& r : trace.rounds) {
    out << r.t << ',' << format_double(r.w.norm());
    for (std::size_t i = 0; i < 3; ++i) {
      out << ',';
      if (r.w.dim() <= 3 && i < r.w.dim()) out << format_double(r.w[i]);
    }
    for (double x : {r.g_norm, r.g_tilde_norm, r.g_clipped_norm, r.h, r.z, r.alpha, r.beta}) out << ',' << format_double(x);
    out << ',' << (r.corrupted ? 1 : 0) << ',' << format_double(r.true_regret) << ','
        << format_double(r.observed_regret) << "\n";
  }
}

void write_summary_csv(std::ostream& out, const std::vector<RunSummary>& rows) {
  out << kSummaryHeader << "\n";
  for (const auto& s : rows) {
    out << to_string(s.algorithm) << ',' << to_string(s.adversary) << ',' << s.T << ',' << s.k << ',' << s.seed
        << ',' << format_double(s.final_true_regret) << ',' << format_double(s.final_observed_regret);
    if (s.decomposition) {
      const auto& d = *s.decomposition;
      for (double x : {d.error_term, d.correction_term, d.bias_term, d.composite_term, d.identity_residual()})
        out << ',' << format_double(x);
    } else {
      out << ",,,,,";
    }
    out << ',' << s.budget.count_corrupted << ',' << s.budget.big_rounds << ','
        << format_double(s.budget.deviation_sum) << ',' << format_double(s.wall_time_s) << "\n";
  }
}

namespace {
std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}
}  // namespace

ExperimentTrace run(const ExperimentConfig& cfg) {
  if (cfg.seeds.empty()) throw std::invalid_argument("run: no seeds configured");
  ExperimentTrace trace = simulate(cfg, cfg.seeds.front());
  const std::filesystem::path dir(cfg.output_path);
  std::filesystem::create_directories(dir);
  auto tf = open_out(dir / "trace.csv");
  write_trace_csv(tf, trace);
  auto sf = open_out(dir / "summary.csv");
  write_summary_csv(sf, {trace.summary});
  if (!tf || !sf) throw std::runtime_error("write failed under " + dir.string());
  return trace;
}

ExperimentConfig sweep_cell(const ExperimentConfig& base, Algorithm a, std::int64_t k, bool corrupted) {
  if (k < 1) throw std::invalid_argument("sweep: k must be >= 1");
  ExperimentConfig c = base;
  const std::int64_t T = k * k;
  c.algorithm = a;
  c.adversary.T = T;
  c.adversary.k = corrupted ? k : 0;
  c.adversary.window_start = 3 * T / 4;
  c.protocol.T = T;
  c.protocol.k = k;
  if (a == Algorithm::kt_bettor) c.protocol.dim = c.adversary.dim;
  return c;
}

std::vector<SweepRow> sweep(const ExperimentConfig& cfg) {
  struct Cell {
    Algorithm a;
    std::int64_t k;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (Algorithm a : cfg.sweep.algorithms)
    for (std::int64_t k : cfg.sweep.k_grid)
      for (std::uint64_t s : cfg.seeds) cells.push_back({a, k, s});
  if (cells.empty()) throw std::invalid_argument("sweep: empty grid");

  std::vector<SweepRow> rows(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
      const Cell& c = cells[i];
      try {
        SweepRow r{c.a, c.k, c.k * c.k, c.seed};
        r.regret_corrupted = simulate(sweep_cell(cfg, c.a, c.k, true), c.seed).summary.final_true_regret;
        r.regret_uncorrupted = simulate(sweep_cell(cfg, c.a, c.k, false), c.seed).summary.final_true_regret;
        rows[i] = r;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned n = cfg.sweep.threads ? cfg.sweep.threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, cells.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << "\n";
  for (const auto& r : rows)
    out << to_string(r.algorithm) << ',' << r.k << ',' << r.T << ',' << r.seed << ','
        << format_double(r.regret_corrupted) << ',' << format_double(r.regret_uncorrupted) << ','
        << format_double(r.ratio()) << "\n";
}

}  // namespace robust_oco
