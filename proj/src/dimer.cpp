#include "branedt/dimer.hpp"

#include <algorithm>
#include <climits>
#include <queue>
#include <sstream>

namespace branedt {

namespace {

std::uint64_t pack_arc(const CoverArc& a) {
  return (std::uint64_t)(std::uint32_t)a.tail_id << 20 | (std::uint32_t)a.arrow;
}

// chi_{I0} of a lifted arrow
int d_value(const MuTable& mt, int tail, int arrow) {
  int head = mt.arc_head(tail, arrow);
  if (head < 0 || mt.mu[tail] < 0 || mt.mu[head] < 0)
    throw DimerError("window margin insufficient");
  return mt.mu[tail] + mt.arc_weight(arrow) - mt.mu[head];
}

std::vector<CoverArc> sorted_arcs(const MuTable& mt, std::vector<CoverArc> arcs) {
  std::sort(arcs.begin(), arcs.end(), [&](const CoverArc& a, const CoverArc& b) {
    const auto& an = mt.tiling->arrows[a.arrow].name;
    const auto& bn = mt.tiling->arrows[b.arrow].name;
    if (an != bn) return an < bn;
    int adx = mt.window.dx_of(a.tail_id), bdx = mt.window.dx_of(b.tail_id);
    if (adx != bdx) return adx < bdx;
    return mt.window.dy_of(a.tail_id) < mt.window.dy_of(b.tail_id);
  });
  return arcs;
}

}  // namespace

std::string diff_to_string(const MuTable& mt, const MatchingDiff& d) {
  std::ostringstream out;
  for (const CoverArc& a : sorted_arcs(mt, d.added))
    out << "add " << mt.tiling->arrows[a.arrow].name << " " << mt.window.dx_of(a.tail_id)
        << " " << mt.window.dy_of(a.tail_id) << "\n";
  for (const CoverArc& a : sorted_arcs(mt, d.removed))
    out << "del " << mt.tiling->arrows[a.arrow].name << " " << mt.window.dx_of(a.tail_id)
        << " " << mt.window.dy_of(a.tail_id) << "\n";
  return out.str();
}

MatchingDiff ideal_to_matching(const MuTable& mt, const Ideal& om) {
  // heights: fiber sizes of the ideal over each cover vertex
  std::unordered_map<int, int> h;
  for (const PathClass& pc : om.elements) ++h[pc.cover_id];
  for (const PathClass& pc : om.elements)
    if (pc.k >= h[pc.cover_id])
      throw DimerError("ideal fibers are not contiguous in k");

  auto height = [&](int id) {
    auto it = h.find(id);
    return it == h.end() ? 0 : it->second;
  };

  MatchingDiff diff;
  int support_radius = 0;
  for (const auto& [id, hv] : h) {
    (void)hv;
    support_radius = std::max(support_radius, mt.window.chebyshev(id));
    if (mt.window.chebyshev(id) > mt.window.radius() - 2)
      throw DimerError("window margin insufficient for the ideal support");
  }
  // arcs with an endpoint in the support are the only candidates for the diff
  std::vector<char> seen(mt.window.size(), 0);
  auto consider = [&](int tail, int arrow) {
    int head = mt.arc_head(tail, arrow);
    if (head < 0) throw DimerError("window margin insufficient");
    int d = d_value(mt, tail, arrow);
    int v = d + height(tail) - height(head);
    if (v != 0 && v != 1) throw DimerError("ideal does not induce a matching (chi out of range)");
    if (v == 1 && d == 0) diff.added.push_back({tail, arrow});
    if (v == 0 && d == 1) diff.removed.push_back({tail, arrow});
  };
  for (const auto& [id, hv] : h) {
    (void)hv;
    if (seen[id]) continue;
    seen[id] = 1;
    for (int a : mt.out_arrows[mt.window.vertex_of(id)]) consider(id, a);
    for (int a : mt.in_arrows[mt.window.vertex_of(id)]) {
      int tail = mt.arc_tail(id, a);
      if (tail < 0) throw DimerError("window margin insufficient");
      if (!h.count(tail)) consider(tail, a);  // support tails handled above
    }
  }
  diff.added = sorted_arcs(mt, diff.added);
  diff.removed = sorted_arcs(mt, diff.removed);

  // one arrow per face on every lift around the support
  int check_radius = std::min(mt.window.radius() - 2,
                              support_radius + mt.tiling->max_face_excursion() + 1);
  std::unordered_map<std::uint64_t, char> flip;
  for (const CoverArc& a : diff.added) flip[pack_arc(a)] = 1;
  for (const CoverArc& a : diff.removed) flip[pack_arc(a)] = 1;
  for (const FaceInstance& inst : face_instances(mt, check_radius)) {
    int chosen = 0;
    for (const CoverArc& arc : inst.arcs) {
      int chi = d_value(mt, arc.tail_id, arc.arrow);
      if (flip.count(pack_arc(arc))) chi = 1 - chi;
      chosen += chi;
    }
    if (chosen != 1) throw DimerError("face not covered exactly once by I(Omega)");
  }
  return diff;
}

HeightField height_field(const MuTable& mt, const MatchingDiff& d) {
  std::unordered_map<std::uint64_t, int> chi_override;
  for (const CoverArc& a : d.added) {
    if (d_value(mt, a.tail_id, a.arrow) != 0)
      throw DimerError("added arc already lies in the canonical matching");
    if (!chi_override.emplace(pack_arc(a), 1).second) throw DimerError("duplicate arc in diff");
  }
  for (const CoverArc& a : d.removed) {
    if (d_value(mt, a.tail_id, a.arrow) != 1)
      throw DimerError("removed arc is not in the canonical matching");
    if (!chi_override.emplace(pack_arc(a), 0).second) throw DimerError("duplicate arc in diff");
  }

  // integration region: reachable vertices safely inside the window
  int region_radius = mt.window.radius() - 1;
  int hull = 0;
  auto touch = [&](const CoverArc& a) {
    int head = mt.arc_head(a.tail_id, a.arrow);
    hull = std::max({hull, mt.window.chebyshev(a.tail_id), mt.window.chebyshev(head)});
  };
  for (const CoverArc& a : d.added) touch(a);
  for (const CoverArc& a : d.removed) touch(a);
  if (hull > mt.window.radius() - 2) throw DimerError("window margin insufficient for the diff");

  auto in_region = [&](int id) {
    return id >= 0 && mt.mu[id] >= 0 && mt.window.chebyshev(id) <= region_radius;
  };
  auto chi_minus_d = [&](int tail, int arrow) {
    auto it = chi_override.find(pack_arc(CoverArc{tail, arrow}));
    if (it == chi_override.end()) return 0;
    return it->second - d_value(mt, tail, arrow);
  };

  // BFS integration from a far seed with h = 0
  std::vector<int> h(mt.window.size(), INT_MIN);
  int seed = -1;
  for (int id = 0; id < mt.window.size() && seed < 0; ++id)
    if (in_region(id) && mt.window.chebyshev(id) == region_radius) seed = id;
  if (seed < 0)
    for (int id = 0; id < mt.window.size() && seed < 0; ++id)
      if (in_region(id)) seed = id;
  if (seed < 0) throw DimerError("empty integration region");
  h[seed] = 0;
  std::queue<int> q;
  q.push(seed);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    int uv = mt.window.vertex_of(u);
    for (int a : mt.out_arrows[uv]) {
      int head = mt.arc_head(u, a);
      if (!in_region(head)) continue;
      int want = h[u] - chi_minus_d(u, a);  // h(i) - h(j) = chi - d on i -> j
      if (h[head] == INT_MIN) {
        h[head] = want;
        q.push(head);
      } else if (h[head] != want) {
        throw DimerError("diff is not an exact matching difference");
      }
    }
    for (int a : mt.in_arrows[uv]) {
      int tail = mt.arc_tail(u, a);
      if (!in_region(tail)) continue;
      int want = h[u] + chi_minus_d(tail, a);
      if (h[tail] == INT_MIN) {
        h[tail] = want;
        q.push(tail);
      } else if (h[tail] != want) {
        throw DimerError("diff is not an exact matching difference");
      }
    }
  }

  HeightField out;
  for (int id = 0; id < mt.window.size(); ++id) {
    if (!in_region(id)) continue;
    if (h[id] == INT_MIN) throw DimerError("integration region is disconnected");
    if (h[id] != 0 && mt.window.chebyshev(id) > hull)
      throw DimerError("heights do not vanish away from the diff");
    if (h[id] < 0) throw DimerError("negative height: not an ideal-induced matching here");
    if (h[id] > 0) {
      out.values[id] = h[id];
      out.total += h[id];
    }
  }
  return out;
}

Ideal matching_to_ideal(const MuTable& mt, const MatchingDiff& d) {
  HeightField h = height_field(mt, d);
  Ideal om;
  om.dim_vector.assign(mt.tiling->vertex_count, 0);
  std::vector<int> ids;
  for (const auto& [id, hv] : h.values) {
    (void)hv;
    ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    int va = mt.window.vertex_of(a), vb = mt.window.vertex_of(b);
    if (va != vb) return va < vb;
    if (mt.window.dx_of(a) != mt.window.dx_of(b)) return mt.window.dx_of(a) < mt.window.dx_of(b);
    return mt.window.dy_of(a) < mt.window.dy_of(b);
  });
  for (int id : ids)
    for (int k = 0; k < h.values.at(id); ++k) {
      om.elements.push_back({id, k});
      ++om.dim_vector[mt.window.vertex_of(id)];
    }

  // downward closure
  std::unordered_map<std::uint64_t, char> in_set;
  auto pack_pc = [](const PathClass& pc) {
    return (std::uint64_t)(std::uint32_t)pc.cover_id << 32 | (std::uint32_t)pc.k;
  };
  for (const PathClass& pc : om.elements) in_set[pack_pc(pc)] = 1;
  for (const PathClass& pc : om.elements)
    for (const auto& [arrow, pred] : class_predecessors(mt, pc)) {
      (void)arrow;
      if (!in_set.count(pack_pc(pred)))
        throw DimerError("heights do not describe a downward-closed ideal");
    }

  if (!(ideal_to_matching(mt, om) == d))
    throw DimerError("matching -> ideal -> matching roundtrip failed");
  return om;
}

namespace {

// Exact cover over window faces with the boundary frozen to I0, pruned by
// partially integrated heights.
struct MatchingSearch {
  MatchingSearch(const MuTable& mt, int max_size, int inner)
      : mt(mt), max_size(max_size), inner(inner) {}

  const MuTable& mt;
  int max_size;
  int inner;  // free arcs have both endpoints within this radius

  struct Arc {
    int tail, head, arrow, d;
    bool free_arc;
    std::vector<int> faces;  // indices into faces_to_cover
  };
  std::vector<Arc> arcs;
  std::unordered_map<std::uint64_t, int> arc_index;
  std::vector<std::vector<int>> incident;  // decided arcs per vertex, filled lazily

  struct FaceState {
    std::vector<int> arcs;
    bool satisfied = false;
    int undecided = 0;
  };
  std::vector<FaceState> faces;
  std::vector<int> face_order;

  std::vector<signed char> chi;  // -1 undecided
  std::vector<int> height;       // INT_MIN unknown
  std::vector<char> active;      // incident to some free arc
  long long height_sum = 0;      // over determined nonnegative heights
  long long accepted = 0;
  long long negative_branches = 0;

  std::map<DimVector, long long>* coeff = nullptr;

  struct Trail {
    std::vector<int> chi_set;
    std::vector<int> height_set;
  };

  bool set_chi(int ai, int value, Trail& tr, std::vector<int>& arc_queue) {
    if (chi[ai] >= 0) return chi[ai] == value;
    if (value == 1)
      for (int f : arcs[ai].faces)
        if (faces[f].satisfied) return false;
    chi[ai] = (signed char)value;
    tr.chi_set.push_back(ai);
    arc_queue.push_back(ai);
    for (int f : arcs[ai].faces) {
      --faces[f].undecided;
      if (value == 1) faces[f].satisfied = true;
    }
    return true;
  }

  bool set_height(int id, int value, Trail& tr, std::vector<int>& vertex_queue) {
    if (height[id] != INT_MIN) return height[id] == value;
    if (value < 0) {
      ++negative_branches;
      return false;
    }
    height[id] = value;
    height_sum += value;
    tr.height_set.push_back(id);
    vertex_queue.push_back(id);
    return height_sum <= max_size;
  }

  bool propagate(Trail& tr, std::vector<int> arc_queue) {
    std::vector<int> vertex_queue;
    for (;;) {
      while (!arc_queue.empty()) {
        int ai = arc_queue.back();
        arc_queue.pop_back();
        const Arc& a = arcs[ai];
        int delta = chi[ai] - a.d;  // h(tail) - h(head)
        bool tk = height[a.tail] != INT_MIN, hk = height[a.head] != INT_MIN;
        if (tk && hk) {
          if (height[a.tail] - height[a.head] != delta) return false;
        } else if (tk) {
          if (!set_height(a.head, height[a.tail] - delta, tr, vertex_queue)) return false;
        } else if (hk) {
          if (!set_height(a.tail, height[a.head] + delta, tr, vertex_queue)) return false;
        }
      }
      if (vertex_queue.empty()) return true;
      int id = vertex_queue.back();
      vertex_queue.pop_back();
      for (int ai : incident[id])
        if (chi[ai] >= 0) arc_queue.push_back(ai);
    }
  }

  void undo(const Trail& tr) {
    for (auto it = tr.chi_set.rbegin(); it != tr.chi_set.rend(); ++it) {
      int ai = *it;
      for (int f : arcs[ai].faces) {
        ++faces[f].undecided;
        if (chi[ai] == 1) faces[f].satisfied = false;
      }
      chi[ai] = -1;
    }
    for (auto it = tr.height_set.rbegin(); it != tr.height_set.rend(); ++it) {
      height_sum -= height[*it];
      height[*it] = INT_MIN;
    }
  }

  void finish() {
    DimVector alpha(mt.tiling->vertex_count, 0);
    long long total = 0;
    for (int id = 0; id < mt.window.size(); ++id) {
      if (active[id] && height[id] == INT_MIN)
        throw DimerError("heights left undetermined after a full assignment");
      if (height[id] != INT_MIN && height[id] > 0) {
        alpha[mt.window.vertex_of(id)] += height[id];
        total += height[id];
      }
    }
    if (total > max_size) return;
    for (int ai = 0; ai < (int)arcs.size(); ++ai)
      if (chi[ai] >= 0 && chi[ai] != arcs[ai].d) {
        int reach = std::max(mt.window.chebyshev(arcs[ai].tail),
                             mt.window.chebyshev(arcs[ai].head));
        if (reach >= inner)
          throw DimerError("accepted matching touches the frozen boundary; enlarge the window");
      }
    ++accepted;
    ++(*coeff)[alpha];
  }

  // Forces the zeros of already-satisfied faces until none remain; a failed
  // force is a contradiction.
  bool force_satisfied(Trail& tr) {
    for (bool again = true; again;) {
      again = false;
      for (int f : face_order) {
        if (!faces[f].satisfied || faces[f].undecided == 0) continue;
        std::vector<int> q;
        for (int ai : faces[f].arcs)
          if (chi[ai] < 0 && !set_chi(ai, 0, tr, q)) return false;
        if (!propagate(tr, std::move(q))) return false;
        again = true;
      }
    }
    return true;
  }

  void search() {
    Trail forced;
    if (force_satisfied(forced)) {
      // branch on the unsatisfied face with the fewest choices
      int face = -1, options = -1;
      for (int f : face_order) {
        if (faces[f].satisfied) continue;
        if (face < 0 || faces[f].undecided < options) {
          face = f;
          options = faces[f].undecided;
        }
      }
      if (face < 0) {
        finish();
      } else {
        for (int pick : faces[face].arcs) {
          if (chi[pick] >= 0) continue;
          Trail tr;
          std::vector<int> q;
          bool ok = set_chi(pick, 1, tr, q);
          for (int ai : faces[face].arcs)
            if (ok && chi[ai] < 0) ok = set_chi(ai, 0, tr, q);
          if (ok && propagate(tr, std::move(q))) search();
          undo(tr);
        }
      }
    }
    undo(forced);
  }
};

}  // namespace

ZViaMatchings z_via_matchings(Workspace& ws, int base_vertex, int max_size,
                              const PipelineOptions& opts) {
  ws.require_certified(opts.force);
  const TilingSpec& t = ws.tiling;
  int s = t.max_shift();
  int inner = max_size * s + 1;
  int min_radius = inner + t.max_face_excursion() + 2;
  int radius = opts.radius_override > 0 ? opts.radius_override : min_radius;
  if (radius < min_radius)
    throw WindowError("window radius too small for the requested size");
  const MuTable& mt = ws.mu(base_vertex, radius);
  if (!mt.stabilized) throw WindowError("mu table not stabilized; enlarge the radius");

  MatchingSearch ms(mt, max_size, inner);

  // collect arcs with both endpoints inside the usable region
  int region = radius - 1;
  auto usable = [&](int id) {
    return id >= 0 && mt.mu[id] >= 0 && mt.window.chebyshev(id) <= region;
  };
  for (int id = 0; id < mt.window.size(); ++id) {
    if (!usable(id)) continue;
    for (int a : mt.out_arrows[mt.window.vertex_of(id)]) {
      int head = mt.arc_head(id, a);
      if (!usable(head)) continue;
      MatchingSearch::Arc arc;
      arc.tail = id;
      arc.head = head;
      arc.arrow = a;
      arc.d = mt.mu[id] + mt.arc_weight(a) - mt.mu[head];
      arc.free_arc = mt.window.chebyshev(id) <= inner && mt.window.chebyshev(head) <= inner;
      ms.arc_index[pack_arc(CoverArc{id, a})] = (int)ms.arcs.size();
      ms.arcs.push_back(std::move(arc));
    }
  }

  // faces to cover: lifts containing at least one free arc
  for (const FaceInstance& inst : face_instances(mt, region)) {
    bool any_free = false, all_known = true;
    std::vector<int> arc_ids;
    for (const CoverArc& arc : inst.arcs) {
      auto it = ms.arc_index.find(pack_arc(arc));
      if (it == ms.arc_index.end()) {
        all_known = false;
        break;
      }
      arc_ids.push_back(it->second);
      if (ms.arcs[it->second].free_arc) any_free = true;
    }
    if (!all_known || !any_free) continue;
    MatchingSearch::FaceState f;
    f.arcs = arc_ids;
    f.undecided = (int)arc_ids.size();
    for (int ai : arc_ids) ms.arcs[ai].faces.push_back((int)ms.faces.size());
    ms.faces.push_back(std::move(f));
  }

  // deterministic order: outermost faces first
  ms.face_order.resize(ms.faces.size());
  for (size_t i = 0; i < ms.faces.size(); ++i) ms.face_order[i] = (int)i;
  auto face_ring = [&](int f) {
    int r = 0;
    for (int ai : ms.faces[f].arcs)
      r = std::max({r, mt.window.chebyshev(ms.arcs[ai].tail), mt.window.chebyshev(ms.arcs[ai].head)});
    return r;
  };
  std::stable_sort(ms.face_order.begin(), ms.face_order.end(),
                   [&](int a, int b) { return face_ring(a) > face_ring(b); });

  ms.chi.assign(ms.arcs.size(), -1);
  ms.height.assign(mt.window.size(), INT_MIN);
  ms.incident.assign(mt.window.size(), {});
  for (int ai = 0; ai < (int)ms.arcs.size(); ++ai) {
    ms.incident[ms.arcs[ai].tail].push_back(ai);
    ms.incident[ms.arcs[ai].head].push_back(ai);
  }

  ZViaMatchings out;
  out.series.num_vertices = t.vertex_count;
  out.series.base_vertex = base_vertex;
  out.series.max_size = max_size;
  ms.coeff = &out.series.coeff;

  // freeze everything outside the inner region to I0 and seed the zero
  // heights of the far band
  MatchingSearch::Trail init;
  std::vector<int> q;
  bool ok = true;
  for (int ai = 0; ai < (int)ms.arcs.size() && ok; ++ai)
    if (!ms.arcs[ai].free_arc) ok = ms.set_chi(ai, ms.arcs[ai].d, init, q);
  std::vector<char> active(mt.window.size(), 0);
  for (const auto& a : ms.arcs)
    if (a.free_arc) active[a.tail] = active[a.head] = 1;
  std::vector<int> vq;
  for (int id = 0; id < mt.window.size() && ok; ++id)
    if (usable(id) && !active[id]) ok = ms.set_height(id, 0, init, vq);
  ms.active = active;
  if (ok) ok = ms.propagate(init, std::move(q));
  if (!ok) throw DimerError("frozen boundary is inconsistent; enlarge the window");

  ms.search();
  out.matchings_accepted = ms.accepted;
  out.negative_branches = ms.negative_branches;
  return out;
}

ZViaMatchings z_via_matchings(const TilingSpec& t, int base_vertex, int max_size) {
  Workspace ws(t);
  return z_via_matchings(ws, base_vertex, max_size);
}

}  // namespace branedt
