#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "robust_oco/adversaries.hpp"
#include "robust_oco/protocol.hpp"

namespace robust_oco {

enum class Algorithm { kt_bettor, known_g, unknown_g_case1, unknown_g_case2 };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);
ProtocolMode protocol_mode_for(Algorithm a);

struct SweepSpec {
  std::vector<std::int64_t> k_grid{20, 30, 40, 50, 60, 70};
  std::vector<Algorithm> algorithms{Algorithm::kt_bettor, Algorithm::known_g};
  unsigned threads = 0;  // 0: hardware concurrency

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::known_g;
  AdversarySpec adversary;
  ProtocolConfig protocol;
  std::optional<Vector> comparator;  // unset: adversary's own, else the origin
  std::vector<std::uint64_t> seeds{0};
  std::string output_path = "out";
  SweepSpec sweep;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// INI text with sections [experiment], [adversary], [protocol], [sweep].
/// Missing protocol k / T / dim default to the adversary's.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

/// Doubles printed with 17 significant digits.
std::string format_double(double x);

}  // namespace robust_oco
