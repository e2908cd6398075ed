#pragma once

#include <string>
#include <vector>

#include "branedt/model.hpp"

namespace branedt {

// A perfect matching, stored as a sorted set of arrow indices.
// Dually to the bipartite picture: exactly one arrow per quiver face.
struct Matching {
  std::vector<int> arrows;

  bool contains(int arrow) const;
};

std::string matching_to_string(const TilingSpec& t, const Matching& m);

// All perfect matchings, deterministically ordered by their sorted
// arrow-name lists. Enumeration is exact-cover backtracking over faces,
// most-constrained face first.
std::vector<Matching> perfect_matchings(const TilingSpec& t);

struct NonDegeneracy {
  bool non_degenerate = false;
  std::vector<int> uncovered;  // arrows in no perfect matching
};

NonDegeneracy is_non_degenerate(const TilingSpec& t);
NonDegeneracy is_non_degenerate(const TilingSpec& t, const std::vector<Matching>& matchings);

// R-charges: values in (0,1) with face sums 2 and vertex co-sums 2
// (arrow-ends, so a loop counts twice). Found by maximizing the margin
// t <= R_a <= 1 - t; feasible means optimum t > 0.
struct RCharge {
  bool feasible = false;
  Rat slack;
  std::vector<Rat> values;  // per arrow, meaningful when feasible
};

RCharge r_charge(const TilingSpec& t);

struct MatchingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The lexicographically smallest perfect matching; throws when none exists.
Matching reference_matching(const TilingSpec& t);
Matching reference_matching(const TilingSpec& t, const std::vector<Matching>& matchings);

}  // namespace branedt
