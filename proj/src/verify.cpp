#include "branedt/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

#include "branedt/workspace.hpp"

namespace branedt {

std::string consistency_report_to_string(const ConsistencyReport& r) {
  std::ostringstream out;
  auto line = [&](const char* k, bool v) { out << k << ": " << (v ? "yes" : "no") << "\n"; };
  line("valid", r.valid);
  line("non_degenerate", r.non_degenerate);
  line("lattice_free", r.lattice_free);
  line("r_charge_feasible", r.r_charge_feasible);
  line("certified", r.certified);
  if (r.condition_c_checked) {
    out << "condition_c_bound: " << r.condition_c_bound << "\n";
    line("condition_c_ok", r.condition_c_ok);
  }
  for (const auto& v : r.violations) out << "violation: " << v << "\n";
  return out.str();
}

ConsistencyReport consistency_report(Workspace& ws, bool with_condition_c, int cycle_bound) {
  ConsistencyReport rep = ws.consistency;
  if (with_condition_c && rep.valid && !ws.matchings.empty()) {
    ConditionCReport cc = check_condition_c(ws, cycle_bound);
    rep.condition_c_checked = true;
    rep.condition_c_ok = cc.ok && cc.conclusive;
    rep.condition_c_bound = cc.cycle_bound;
    for (const auto& v : cc.violations) rep.violations.push_back(v);
  }
  return rep;
}

ConditionCReport check_condition_c(Workspace& ws, int cycle_bound, long long node_budget) {
  if (!ws.consistency.valid) throw std::invalid_argument("tiling failed validation");
  ConditionCReport rep;
  rep.cycle_bound = cycle_bound > 0 ? cycle_bound : (int)ws.matchings.size();
  if (ws.matchings.empty()) {
    rep.violations.push_back("no perfect matchings at all");
    rep.conclusive = true;
    return rep;
  }
  const TilingSpec& t = ws.tiling;
  int radius = ws.default_radius(rep.cycle_bound);
  rep.conclusive = true;

  for (int b = 0; b < t.vertex_count && rep.conclusive; ++b) {
    const MuTable& mt = ws.mu(b, radius);
    const Window& win = mt.window;

    // per matching: cover vertices reachable from the base avoiding it
    std::vector<std::vector<char>> reach;
    for (const Matching& m : ws.matchings) {
      std::vector<char> r(win.size(), 0);
      std::vector<int> stack{mt.base_id};
      r[mt.base_id] = 1;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        ++rep.frontier;
        for (int a : mt.out_arrows[win.vertex_of(u)]) {
          if (m.contains(a)) continue;
          int v = mt.arc_head(u, a);
          if (v < 0 || r[v]) continue;
          r[v] = 1;
          stack.push_back(v);
        }
      }
      reach.push_back(std::move(r));
      if (node_budget > 0 && rep.frontier > node_budget) {
        rep.conclusive = false;
        break;
      }
    }
    if (!rep.conclusive) break;

    for (int id = 0; id < win.size(); ++id) {
      if (win.chebyshev(id) > rep.cycle_bound) continue;
      ++rep.pairs_checked;
      std::ostringstream where;
      where << "base " << b << " -> (" << win.vertex_of(id) << "," << win.dx_of(id) << ","
            << win.dy_of(id) << ")";
      bool any = false;
      for (size_t m = 0; m < reach.size(); ++m) any = any || reach[m][id];
      if (!any) {
        rep.violations.push_back("no matching-avoiding path: " + where.str());
        continue;
      }
      bool primal = false;
      for (int a : mt.out_arrows[win.vertex_of(id)])
        for (size_t m = 0; m < reach.size() && !primal; ++m)
          if (reach[m][id] && !ws.matchings[m].contains(a)) primal = true;
      bool dual = false;
      for (int a : mt.in_arrows[b])
        for (size_t m = 0; m < reach.size() && !dual; ++m)
          if (reach[m][id] && !ws.matchings[m].contains(a)) dual = true;
      if (!primal) rep.violations.push_back("no extendable shortest path at " + where.str());
      if (!dual) rep.violations.push_back("no co-extendable shortest path at " + where.str());
    }
  }
  rep.ok = rep.violations.empty();
  return rep;
}

namespace {

using Weight = std::vector<std::int64_t>;

Weight add(const Weight& a, const Weight& b, int sign) {
  Weight r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + sign * b[i];
  return r;
}

struct WeightSet {
  std::unordered_set<Weight, VectorHash> s;
  bool contains(const Weight& w) const { return s.count(w) != 0; }
};

}  // namespace

CharacterCheck verify_resolution_character(Workspace& ws, int vertex, int degree_bound) {
  ws.require_certified(false);
  const TilingSpec& t = ws.tiling;
  const WeightLattice& wl = ws.lattice;
  const std::vector<Rat>& rv = ws.positivity.arrow_value;

  Rat rmin = rv[0], rmax = rv[0];
  for (const Rat& r : rv) {
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  Rat excess = rmax - 2;
  Rat qmax = Rat(degree_bound) + std::max(Rat(0), excess);
  // weights with R-degree <= qmax come from paths of at most `steps` arrows
  Rat steps_rat = qmax / rmin;
  long steps = (long)mpz_class(steps_rat.get_num() / steps_rat.get_den()).get_si() + 1;
  int radius = (int)steps * t.max_shift() + t.max_face_excursion() + 2;

  auto rdeg_of = [&](const Weight& w) {
    Rat r(0);
    for (int j = 0; j < wl.lattice_rank; ++j) r += ws.positivity.functional[j] * rat(w[j]);
    return r;
  };

  Weight omega(wl.omega_bar.begin(), wl.omega_bar.end());

  // graded supports of the projectives P_j
  std::vector<WeightSet> support(t.vertex_count);
  for (int j = 0; j < t.vertex_count; ++j) {
    const MuTable& mt = ws.mu(j, radius);
    std::vector<Weight> weight0(mt.window.size());
    std::vector<Rat> rdeg0(mt.window.size());
    std::vector<char> known(mt.window.size(), 0);
    weight0[mt.base_id].assign(wl.lattice_rank, 0);
    rdeg0[mt.base_id] = Rat(0);
    known[mt.base_id] = 1;
    for (int id = 0; id < mt.window.size(); ++id) {
      if (mt.mu[id] < 0 || known[id]) continue;
      std::vector<int> chain;
      int cur = id;
      while (!known[cur]) {
        chain.push_back(cur);
        cur = mt.parent_id[cur];
      }
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        int p = mt.parent_id[*it];
        int a = mt.parent_arrow[*it];
        Weight w = weight0[p];
        for (int c = 0; c < wl.lattice_rank; ++c) w[c] += wl.arrow_weight[a][c];
        weight0[*it] = std::move(w);
        rdeg0[*it] = rdeg0[p] + rv[a];
        known[*it] = 1;
      }
    }
    for (int id = 0; id < mt.window.size(); ++id) {
      if (mt.mu[id] < 0) continue;
      Rat r = rdeg0[id];
      Weight w = weight0[id];
      for (int k = 0; r <= qmax; ++k) {
        support[j].s.insert(w);
        r += 2;
        for (int c = 0; c < wl.lattice_rank; ++c) w[c] += omega[c];
      }
    }
  }

  // candidate weights: supports of the five terms of the complex
  std::set<Weight> candidates;
  auto offer = [&](Weight w) {
    if (rdeg_of(w) <= degree_bound) candidates.insert(std::move(w));
  };
  offer(Weight(wl.lattice_rank, 0));
  for (const Weight& w : support[vertex].s) {
    offer(w);
    offer(add(w, omega, +1));
  }
  for (int a = 0; a < (int)t.arrows.size(); ++a) {
    Weight wa(wl.arrow_weight[a].begin(), wl.arrow_weight[a].end());
    if (t.arrows[a].dst == vertex) {  // term P_{src}[a - omega]
      for (const Weight& w : support[t.arrows[a].src].s)
        offer(add(add(w, wa, -1), omega, +1));
    }
    if (t.arrows[a].src == vertex) {  // term P_{dst}[-a]
      for (const Weight& w : support[t.arrows[a].dst].s) offer(add(w, wa, +1));
    }
  }

  CharacterCheck out;
  out.ok = true;
  std::vector<Weight> ordered(candidates.begin(), candidates.end());
  std::stable_sort(ordered.begin(), ordered.end(), [&](const Weight& a, const Weight& b) {
    Rat ra = rdeg_of(a), rb = rdeg_of(b);
    int c = cmp(ra, rb);
    if (c != 0) return c < 0;
    return a < b;
  });
  Weight zero(wl.lattice_rank, 0);
  for (const Weight& lam : ordered) {
    ++out.weights_checked;
    long long val = 0;
    if (support[vertex].contains(add(lam, omega, -1))) val += 1;  // P_i[-omega]
    for (int a = 0; a < (int)t.arrows.size(); ++a) {
      Weight wa(wl.arrow_weight[a].begin(), wl.arrow_weight[a].end());
      if (t.arrows[a].dst == vertex &&
          support[t.arrows[a].src].contains(add(add(lam, wa, +1), omega, -1)))
        val -= 1;
      if (t.arrows[a].src == vertex && support[t.arrows[a].dst].contains(add(lam, wa, -1)))
        val += 1;
    }
    if (support[vertex].contains(lam)) val -= 1;  // P_i
    if (lam == zero) val += 1;                    // S_i
    if (val != 0) {
      out.ok = false;
      out.first_failure = lam;
      break;
    }
  }
  return out;
}

}  // namespace branedt
