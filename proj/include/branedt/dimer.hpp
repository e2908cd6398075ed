#pragma once

#include <unordered_map>

#include "branedt/ideals.hpp"
#include "branedt/workspace.hpp"

namespace branedt {

struct DimerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A perfect matching of the plane tiling congruent to the canonical one,
// stored as its symmetric difference from I0.
struct MatchingDiff {
  std::vector<CoverArc> added;    // in I, not in I0
  std::vector<CoverArc> removed;  // in I0, not in I

  bool operator==(const MatchingDiff&) const = default;
};

std::string diff_to_string(const MuTable& mt, const MatchingDiff& d);

// I(Omega) = { a: i->j | some u in Omega'_i with a.u outside Omega'_j },
// evaluated on the top elements of the ideal's fibers. Checks the
// one-arrow-per-face property around the support.
MatchingDiff ideal_to_matching(const MuTable& mt, const Ideal& om);

struct HeightField {
  std::unordered_map<int, int> values;  // cover id -> height, nonzero only
  long long total = 0;
};

// Integrates chi_I - chi_I0 with h = 0 far from the base; throws DimerError
// when the diff is not an exact matching difference or a height is negative.
HeightField height_field(const MuTable& mt, const MatchingDiff& d);

// Omega = {(i,k) : 0 <= k <= h(i)-1}; validates downward closure and the
// ideal_to_matching roundtrip. Elements come out sorted by (vertex, dx, dy, k).
Ideal matching_to_ideal(const MuTable& mt, const MatchingDiff& d);

struct ZViaMatchings {
  SeriesByDim series;
  long long matchings_accepted = 0;
  long long negative_branches = 0;  // pruned branches that forced h < 0
};

// The independent route: enumerate perfect matchings of a window that agree
// with I0 outside the inner region (exact cover over faces, boundary frozen),
// compute heights, and aggregate prod_i x_{pi(i)}^{h(i)} with sum h bounded.
// Never touches the ideal enumerator.
ZViaMatchings z_via_matchings(Workspace& ws, int base_vertex, int max_size,
                              const PipelineOptions& opts = {});

ZViaMatchings z_via_matchings(const TilingSpec& t, int base_vertex, int max_size);

}  // namespace branedt
