#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "branedt/rational.hpp"
#include "branedt/smith.hpp"

namespace branedt {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// thrown when an operation requires a tiling that failed validation
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Arrow {
  std::string name;
  int src = 0;
  int dst = 0;
  int dx = 0;  // homology shift of the arrow on the torus
  int dy = 0;
};

struct Face {
  int sign = +1;              // +1 or -1
  std::vector<int> arrows;    // cyclic, head-to-tail: dst(a_k) == src(a_{k+1})
};

// A brane tiling presented through its dual quiver on the torus.
// Faces of the quiver are the bipartite-graph vertices; sign +1 = white.
struct TilingSpec {
  int vertex_count = 0;
  std::vector<Arrow> arrows;
  std::vector<Face> faces;

  int arrow_index(std::string_view name) const;

  // max Chebyshev norm of any arrow shift (>= 1 for genuine torus data)
  int max_shift() const;
  // max Chebyshev norm of partial shift sums along any face cycle
  int max_face_excursion() const;
};

struct ValidationIssue {
  std::string invariant;
  std::string witness;
};

struct ValidationReport {
  bool ok = false;
  std::vector<ValidationIssue> issues;
};

TilingSpec parse_tiling(const std::string& text);
std::string tiling_to_text(const TilingSpec& t);
ValidationReport validate_tiling(const TilingSpec& t);

// Built-in tilings: c3, conifold, c3-zn (param n >= 2), spp, dp3.
TilingSpec builtin_tiling(const std::string& name, std::optional<int> param = std::nullopt);
std::vector<std::string> builtin_names();

struct PotentialTerm {
  int sign;
  std::vector<std::string> necklace;
};

// One term per face, rotated so the lexicographically smallest arrow name
// (smallest subsequent word on ties) comes first.
std::vector<PotentialTerm> potential_terms(const TilingSpec& t);

using DimVector = std::vector<std::int64_t>;

// <a,b> = sum_i a_i b_i - sum_{arrows i->j} a_i b_j
std::int64_t ringel_form(const TilingSpec& t, const DimVector& a, const DimVector& b);

// The grading group: Z^{Q1} modulo differences of face boundaries,
// in coordinates coming from a Smith normal form of the relation matrix.
struct WeightLattice {
  int ambient_rank = 0;
  int lattice_rank = 0;
  IntMatrix relation_basis;                        // rows d2(F) - d2(F0)
  IntMatrix coord_basis;                           // ambient x lattice_rank
  std::vector<std::vector<std::int64_t>> arrow_weight;  // per arrow
  std::vector<std::int64_t> omega_bar;             // weight of any face boundary
  std::vector<Int> invariant_factors;

  std::vector<std::int64_t> coord(const std::vector<Int>& content) const;
};

struct LatticeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws LatticeError when the group has torsion.
WeightLattice weight_lattice(const TilingSpec& t);

// A rational functional R on the lattice with R(a) > 0 on every arrow
// and R(omega_bar) = 2, found by maximizing the minimum slack.
struct PositivityCertificate {
  bool feasible = false;
  Rat min_slack;
  std::vector<Rat> functional;     // on lattice coordinates
  std::vector<Rat> arrow_value;    // R at each arrow
  std::vector<std::string> tight_arrows;  // slack-minimal arrows (witness when infeasible)
};

PositivityCertificate positivity_certificate(const TilingSpec& t, const WeightLattice& w);

}  // namespace branedt
