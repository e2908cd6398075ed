#pragma once

#include <string>
#include <vector>

#include "branedt/matching.hpp"
#include "branedt/model.hpp"

namespace branedt {

struct WindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A finite window of the universal cover: quiver vertices times the cells
// with Chebyshev norm <= radius.
class Window {
 public:
  Window(int num_vertices, int radius)
      : nv_(num_vertices), radius_(radius), side_(2 * radius + 1) {}

  int radius() const { return radius_; }
  int num_vertices() const { return nv_; }
  int size() const { return nv_ * side_ * side_; }

  int id(int v, int dx, int dy) const {
    if (dx < -radius_ || dx > radius_ || dy < -radius_ || dy > radius_) return -1;
    return ((dx + radius_) * side_ + (dy + radius_)) * nv_ + v;
  }
  int vertex_of(int id) const { return id % nv_; }
  int dx_of(int id) const { return id / nv_ / side_ - radius_; }
  int dy_of(int id) const { return id / nv_ % side_ - radius_; }
  int chebyshev(int id) const { return std::max(std::abs(dx_of(id)), std::abs(dy_of(id))); }

 private:
  int nv_, radius_, side_;
};

// Shortest-path table on the cover for weights chi_{M0}: mu is the minimal
// M0-degree of a strict path from the base, with a witness tree.
struct MuTable {
  const TilingSpec* tiling = nullptr;
  Matching m0;
  Window window{1, 1};
  int base_vertex = 0;
  int base_id = -1;
  std::vector<int> mu;            // -1 where unreachable inside the window
  std::vector<int> parent_id;     // witness tree edges
  std::vector<int> parent_arrow;
  bool stabilized = false;

  std::vector<std::vector<int>> out_arrows;  // per quiver vertex
  std::vector<std::vector<int>> in_arrows;

  int arc_weight(int arrow) const { return m0.contains(arrow) ? 1 : 0; }
  // head of the lifted arrow at the given tail; -1 when it leaves the window
  int arc_head(int tail_id, int arrow) const;
  int arc_tail(int head_id, int arrow) const;
};

// radius >= 1; stabilization is checked against a radius+1 recomputation.
// Throws ConsistencyError on a zero-weight cycle and WindowError when some
// interior vertex (Chebyshev <= radius-2) is unreachable.
MuTable mu_table(const TilingSpec& t, const Matching& m0, int base_vertex, int radius);

// A weak-equivalence class of strict paths from the base: the cover endpoint
// plus the number of face cycles above the shortest path.
struct PathClass {
  int cover_id = -1;
  int k = 0;
  bool operator==(const PathClass&) const = default;
};

// Children along each out-arrow of the endpoint; k never drops below zero.
std::vector<std::pair<int, PathClass>> class_children(const MuTable& mt, const PathClass& c);
// Exact one-step predecessors (candidates with negative k are not classes).
std::vector<std::pair<int, PathClass>> class_predecessors(const MuTable& mt, const PathClass& c);

// Arrow multiplicities of the witness shortest path to the vertex.
std::vector<int> witness_content(const MuTable& mt, int cover_id);

std::vector<std::int64_t> class_weight(const MuTable& mt, const WeightLattice& w,
                                       const PathClass& c);

struct CoverArc {
  int tail_id = -1;
  int arrow = -1;
  bool operator==(const CoverArc&) const = default;
};

// Membership of a lifted arrow in the canonical matching I0 = I(empty ideal):
// the arrow strictly increases the face-cycle exponent.
bool in_canonical_matching(const MuTable& mt, int tail_id, int arrow);
// All I0 arcs with both endpoints within the Chebyshev bound.
std::vector<CoverArc> canonical_matching_arcs(const MuTable& mt, int max_chebyshev);

struct FaceInstance {
  int face = -1;
  std::vector<CoverArc> arcs;  // in cycle order
};

// Lifts of every face whose arc endpoints all stay within the bound.
std::vector<FaceInstance> face_instances(const MuTable& mt, int max_chebyshev);

}  // namespace branedt
