#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace robust_oco {

/// A named property suite. `run` prints one verdict line per property and
/// returns true iff all of them hold.
struct Check {
  std::string name;
  std::string description;
  bool (*run)(std::ostream& out);
};

const std::vector<Check>& check_registry();
/// nullptr when the name is not registered.
const Check* find_check(const std::string& name);

bool check_filter_lemma_suite(std::ostream& out);
bool check_tracker_lemma_suite(std::ostream& out);
bool check_regularizer_sums(std::ostream& out);
bool check_md_inversion(std::ostream& out);
bool check_epigraph_feasibility(std::ostream& out);
bool check_random_seq(std::ostream& out);
bool check_lb_theorem2_floor(std::ostream& out);
bool check_origin_safety(std::ostream& out);
bool check_decomposition_identity(std::ostream& out);
bool check_fig1_fragility(std::ostream& out);
bool check_known_g_scaling(std::ostream& out);
bool check_unknown_g_blind(std::ostream& out);

/// (eps G + ||u|| G (sqrt T + k)) (1 + ln(1 + ||u|| T / eps))^2
double known_g_scale(double eps, double G, double u, double T, double k);
/// (eps G + ||u|| G (sqrt T + k) + (k + 1)(||u||^2 + G^2)) (1 + ln(1 + ||u|| T / eps))^2
double unknown_g_scale(double eps, double G, double u, double T, double k);

}  // namespace robust_oco
