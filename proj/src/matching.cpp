#include "branedt/matching.hpp"

#include <algorithm>

#include "branedt/simplex.hpp"

namespace branedt {

bool Matching::contains(int arrow) const {
  return std::binary_search(arrows.begin(), arrows.end(), arrow);
}

std::string matching_to_string(const TilingSpec& t, const Matching& m) {
  std::vector<std::string> names;
  for (int a : m.arrows) names.push_back(t.arrows[a].name);
  std::sort(names.begin(), names.end());
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    out += names[i];
  }
  return out;
}

namespace {

struct CoverSearch {
  const TilingSpec& t;
  std::vector<std::vector<int>> arrow_faces;  // faces incident to each arrow
  std::vector<int> cover_count;               // chosen arrows covering each face
  std::vector<int> chosen;
  std::vector<Matching>& out;

  CoverSearch(const TilingSpec& t, std::vector<Matching>& out) : t(t), out(out) {
    arrow_faces.resize(t.arrows.size());
    for (int f = 0; f < (int)t.faces.size(); ++f)
      for (int ai : t.faces[f].arrows) arrow_faces[ai].push_back(f);
    cover_count.assign(t.faces.size(), 0);
  }

  bool viable(int ai) const {
    for (int f : arrow_faces[ai])
      if (cover_count[f] > 0) return false;
    return true;
  }

  void run() {
    int face = -1, options = -1;
    for (int f = 0; f < (int)t.faces.size(); ++f) {
      if (cover_count[f] > 0) continue;
      int n = 0;
      for (int ai : t.faces[f].arrows)
        if (viable(ai)) ++n;
      if (face < 0 || n < options) {
        face = f;
        options = n;
      }
    }
    if (face < 0) {
      Matching m;
      m.arrows = chosen;
      std::sort(m.arrows.begin(), m.arrows.end());
      out.push_back(std::move(m));
      return;
    }
    if (options == 0) return;
    for (int ai : t.faces[face].arrows) {
      if (!viable(ai)) continue;
      for (int f : arrow_faces[ai]) ++cover_count[f];
      chosen.push_back(ai);
      run();
      chosen.pop_back();
      for (int f : arrow_faces[ai]) --cover_count[f];
    }
  }
};

}  // namespace

std::vector<Matching> perfect_matchings(const TilingSpec& t) {
  std::vector<Matching> out;
  CoverSearch search(t, out);
  search.run();
  std::sort(out.begin(), out.end(), [&](const Matching& a, const Matching& b) {
    std::vector<std::string> na, nb;
    for (int i : a.arrows) na.push_back(t.arrows[i].name);
    for (int i : b.arrows) nb.push_back(t.arrows[i].name);
    std::sort(na.begin(), na.end());
    std::sort(nb.begin(), nb.end());
    return na < nb;
  });
  return out;
}

NonDegeneracy is_non_degenerate(const TilingSpec& t) {
  return is_non_degenerate(t, perfect_matchings(t));
}

NonDegeneracy is_non_degenerate(const TilingSpec& t, const std::vector<Matching>& matchings) {
  NonDegeneracy res;
  std::vector<char> covered(t.arrows.size(), 0);
  for (const auto& m : matchings)
    for (int a : m.arrows) covered[a] = 1;
  for (int a = 0; a < (int)t.arrows.size(); ++a)
    if (!covered[a]) res.uncovered.push_back(a);
  res.non_degenerate = res.uncovered.empty();
  return res;
}

RCharge r_charge(const TilingSpec& t) {
  int n = (int)t.arrows.size();
  int nv = n + 2;  // R_a, then t+/t-
  LinearProgram lp(nv);
  for (int a = 0; a < n; ++a) {
    std::vector<Rat> lo(nv, Rat(0)), hi(nv, Rat(0));
    lo[a] = rat(1);
    lo[n] = rat(-1);
    lo[n + 1] = rat(1);
    lp.add_ge(std::move(lo), Rat(0));  // R_a >= t
    hi[a] = rat(1);
    hi[n] = rat(1);
    hi[n + 1] = rat(-1);
    lp.add_le(std::move(hi), rat(1));  // R_a <= 1 - t
  }
  for (const auto& f : t.faces) {
    std::vector<Rat> row(nv, Rat(0));
    for (int ai : f.arrows) row[ai] += rat(1);
    lp.add_eq(std::move(row), rat(2));
  }
  for (int v = 0; v < t.vertex_count; ++v) {
    std::vector<Rat> row(nv, Rat(0));
    int ends = 0;
    for (int a = 0; a < n; ++a) {
      if (t.arrows[a].src == v) {
        row[a] += rat(1);
        ++ends;
      }
      if (t.arrows[a].dst == v) {
        row[a] += rat(1);
        ++ends;
      }
    }
    lp.add_eq(std::move(row), rat(ends - 2));  // sum over ends of (1 - R_a) = 2
  }
  std::vector<Rat> obj(nv, Rat(0));
  obj[n] = rat(1);
  obj[n + 1] = rat(-1);
  LPResult sol = lp.maximize(obj);

  RCharge rc;
  if (sol.status != LPStatus::Optimal) return rc;
  rc.slack = sol.objective;
  rc.feasible = rc.slack > 0;
  rc.values.assign(sol.x.begin(), sol.x.begin() + n);
  return rc;
}

Matching reference_matching(const TilingSpec& t) {
  return reference_matching(t, perfect_matchings(t));
}

Matching reference_matching(const TilingSpec&, const std::vector<Matching>& matchings) {
  if (matchings.empty()) throw MatchingError("tiling has no perfect matching");
  return matchings.front();  // perfect_matchings sorts lexicographically
}

}  // namespace branedt
