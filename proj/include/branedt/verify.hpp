#pragma once

#include <string>
#include <vector>

#include "branedt/cover.hpp"

namespace branedt {

struct Workspace;

struct ConsistencyReport {
  bool valid = false;
  bool non_degenerate = false;
  bool lattice_free = false;
  bool r_charge_feasible = false;
  bool certified = false;  // conjunction of the three sufficient conditions
  bool condition_c_checked = false;
  bool condition_c_ok = false;
  int condition_c_bound = 0;
  std::vector<std::string> violations;
};

std::string consistency_report_to_string(const ConsistencyReport& r);

// Certification flags were computed when the workspace was built; this
// optionally adds the direct (bounded) condition-C search on top.
ConsistencyReport consistency_report(Workspace& ws, bool with_condition_c = false,
                                     int cycle_bound = -1);

struct ConditionCReport {
  bool ok = false;
  bool conclusive = false;
  int cycle_bound = 0;
  long long pairs_checked = 0;
  long long frontier = 0;  // BFS work done (for inconclusive reports)
  std::vector<std::string> violations;
};

// Direct search for the shortest-path extension condition, using the
// matching-avoidance characterization of shortest paths: a path is shortest
// iff some perfect matching misses all of its arrows. Checks every pair
// (base vertex, window target) with targets within cycle_bound cells.
// cycle_bound < 0 means "number of perfect matchings".
ConditionCReport check_condition_c(Workspace& ws, int cycle_bound = -1,
                                   long long node_budget = -1);

struct CharacterCheck {
  bool ok = false;
  long long weights_checked = 0;
  std::vector<std::int64_t> first_failure;  // empty when ok
};

// Verifies that the graded character of the projective resolution of the
// vertex simple vanishes, for every weight of R-degree <= degree_bound.
CharacterCheck verify_resolution_character(Workspace& ws, int vertex, int degree_bound);

}  // namespace branedt
