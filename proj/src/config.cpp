#include "robust_oco/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace robust_oco {

namespace pt = boost::property_tree;

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kt_bettor: return "kt_bettor";
    case Algorithm::known_g: return "known_g";
    case Algorithm::unknown_g_case1: return "unknown_g_case1";
    case Algorithm::unknown_g_case2: return "unknown_g_case2";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
  for (auto a : {Algorithm::kt_bettor, Algorithm::known_g, Algorithm::unknown_g_case1, Algorithm::unknown_g_case2})
    if (s == to_string(a)) return a;
  throw std::invalid_argument("unknown algorithm: " + s);
}

ProtocolMode protocol_mode_for(Algorithm a) {
  switch (a) {
    case Algorithm::unknown_g_case1: return ProtocolMode::unknown_G_case1;
    case Algorithm::unknown_g_case2: return ProtocolMode::unknown_G_case2;
    default: return ProtocolMode::known_G;
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

template <class T, class F>
std::vector<T> split_list(const std::string& s, F&& conv) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    out.push_back(conv(item.substr(b, item.find_last_not_of(" \t") - b + 1)));
  }
  return out;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt(v[i]);
  return out;
}

double to_d(const std::string& s) {
  std::size_t pos = 0;
  const double x = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("not a number: " + s);
  return x;
}

template <class T>
std::optional<T> get_opt(const pt::ptree& tree, const std::string& key) {
  if (auto v = tree.get_optional<std::string>(key)) {
    if constexpr (std::is_same_v<T, double>) return to_d(*v);
    else return tree.get<T>(key);
  }
  return std::nullopt;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  static const std::vector<std::string> known = {"experiment", "adversary", "protocol", "sweep"};
  for (const auto& [section, _] : tree)
    if (std::find(known.begin(), known.end(), section) == known.end())
      throw std::invalid_argument("config: unknown section [" + section + "]");

  ExperimentConfig cfg;
  const auto ex = tree.get_child("experiment", {});
  const auto ad = tree.get_child("adversary", {});
  const auto pr = tree.get_child("protocol", {});
  const auto sw = tree.get_child("sweep", {});

  if (auto a = get_opt<std::string>(ex, "algorithm")) cfg.algorithm = algorithm_from_string(*a);
  if (auto s = get_opt<std::string>(ex, "seeds"))
    cfg.seeds = split_list<std::uint64_t>(*s, [](const std::string& x) { return std::stoull(x); });
  if (cfg.seeds.empty()) throw std::invalid_argument("config: seeds must be nonempty");
  if (auto o = get_opt<std::string>(ex, "output_path")) cfg.output_path = *o;
  if (auto c = get_opt<std::string>(ex, "comparator")) cfg.comparator = Vector(split_list<double>(*c, to_d));

  auto& A = cfg.adversary;
  if (auto v = get_opt<std::string>(ad, "kind")) A.kind = adversary_kind_from_string(*v);
  A.T = ad.get("T", A.T);
  A.k = ad.get("k", A.k);
  A.window_start = ad.get("window_start", A.window_start);
  if (auto v = get_opt<double>(ad, "D")) A.D = *v;
  if (auto v = get_opt<double>(ad, "G")) A.G = *v;
  if (auto v = get_opt<double>(ad, "epsilon")) A.epsilon = *v;
  A.seed = ad.get("seed", A.seed);
  A.dim = ad.get("dim", A.dim);

  auto& P = cfg.protocol;
  P.mode = protocol_mode_for(cfg.algorithm);
  P.dim = pr.get("dim", A.dim);
  P.k = pr.get("k", A.k);
  P.T = pr.get("T", A.T);
  if (auto v = get_opt<double>(pr, "epsilon")) P.epsilon = *v;
  P.G = get_opt<double>(pr, "G");
  if (auto v = get_opt<double>(pr, "tau_G")) P.tau_G = *v;
  if (auto v = get_opt<double>(pr, "tau_D")) P.tau_D = *v;
  if (auto v = get_opt<double>(pr, "c")) P.c = *v;
  if (auto v = get_opt<double>(pr, "gamma_alpha")) P.gamma_alpha = *v;
  if (auto v = get_opt<double>(pr, "gamma_beta")) P.gamma_beta = *v;
  P.p = get_opt<double>(pr, "p");
  P.alpha_offset = get_opt<double>(pr, "alpha_offset");

  if (auto v = get_opt<std::string>(sw, "k_grid"))
    cfg.sweep.k_grid = split_list<std::int64_t>(*v, [](const std::string& x) { return std::stoll(x); });
  if (auto v = get_opt<std::string>(sw, "algorithms"))
    cfg.sweep.algorithms = split_list<Algorithm>(*v, algorithm_from_string);
  cfg.sweep.threads = sw.get("threads", cfg.sweep.threads);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  return parse_config(in);
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  const auto num = [](double x) { return format_double(x); };
  out << "[experiment]\n"
      << "algorithm = " << to_string(cfg.algorithm) << "\n"
      << "seeds = " << join(cfg.seeds, [](std::uint64_t s) { return std::to_string(s); }) << "\n"
      << "output_path = " << cfg.output_path << "\n";
  if (cfg.comparator) out << "comparator = " << join(std::vector<double>(cfg.comparator->coords().begin(), cfg.comparator->coords().end()), num) << "\n";

  const auto& A = cfg.adversary;
  out << "\n[adversary]\n"
      << "kind = " << to_string(A.kind) << "\n"
      << "T = " << A.T << "\n"
      << "k = " << A.k << "\n"
      << "window_start = " << A.window_start << "\n"
      << "D = " << num(A.D) << "\n"
      << "G = " << num(A.G) << "\n"
      << "epsilon = " << num(A.epsilon) << "\n"
      << "seed = " << A.seed << "\n"
      << "dim = " << A.dim << "\n";

  const auto& P = cfg.protocol;
  out << "\n[protocol]\n"
      << "dim = " << P.dim << "\n"
      << "k = " << P.k << "\n";
  if (P.T) out << "T = " << *P.T << "\n";
  out << "epsilon = " << num(P.epsilon) << "\n";
  if (P.G) out << "G = " << num(*P.G) << "\n";
  out << "tau_G = " << num(P.tau_G) << "\n"
      << "tau_D = " << num(P.tau_D) << "\n"
      << "c = " << num(P.c) << "\n"
      << "gamma_alpha = " << num(P.gamma_alpha) << "\n"
      << "gamma_beta = " << num(P.gamma_beta) << "\n";
  if (P.p) out << "p = " << num(*P.p) << "\n";
  if (P.alpha_offset) out << "alpha_offset = " << num(*P.alpha_offset) << "\n";

  out << "\n[sweep]\n"
      << "k_grid = " << join(cfg.sweep.k_grid, [](std::int64_t k) { return std::to_string(k); }) << "\n"
      << "algorithms = " << join(cfg.sweep.algorithms, [](Algorithm a) { return to_string(a); }) << "\n"
      << "threads = " << cfg.sweep.threads << "\n";
  return out.str();
}

}  // namespace robust_oco
