#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "branedt/cover.hpp"
#include "oracles.hpp"

using namespace branedt;

namespace {

Matching matching_named(const TilingSpec& t, std::vector<std::string> names) {
  Matching m;
  for (const auto& n : names) m.arrows.push_back(t.arrow_index(n));
  std::sort(m.arrows.begin(), m.arrows.end());
  return m;
}

}  // namespace

TEST_CASE("c3 mu values match the lattice-path oracle") {
  TilingSpec c3 = builtin_tiling("c3");
  MuTable mt = mu_table(c3, matching_named(c3, {"z"}), 0, 8);
  REQUIRE(mt.stabilized);
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b) {
      int id = mt.window.id(0, a, b);
      INFO("cell ", a, ",", b);
      CHECK(mt.mu[id] == std::max({0, -a, -b}));
      CHECK(mt.mu[id] == oracles::c3_mu_oracle(a, b, 8));
    }
}

TEST_CASE("mu basics") {
  for (const char* name : {"c3", "conifold", "spp", "dp3"}) {
    TilingSpec t = builtin_tiling(name);
    Matching m0 = reference_matching(t);
    MuTable mt = mu_table(t, m0, 0, 6);
    INFO(name);
    CHECK(mt.stabilized);
    CHECK(mt.mu[mt.base_id] == 0);
    // triangle inequality on every window arc, and the witness property
    for (int id = 0; id < mt.window.size(); ++id) {
      if (mt.mu[id] < 0) continue;
      for (int a : mt.out_arrows[mt.window.vertex_of(id)]) {
        int head = mt.arc_head(id, a);
        if (head < 0 || mt.mu[head] < 0) continue;
        CHECK(mt.mu[head] <= mt.mu[id] + mt.arc_weight(a));
        CHECK(mt.mu[id] + mt.arc_weight(a) - mt.mu[head] >= 0);
        CHECK(mt.mu[id] + mt.arc_weight(a) - mt.mu[head] <= 1);
      }
      // witness content reaches the vertex with the recorded degree
      std::vector<int> content = witness_content(mt, id);
      int deg = 0, dx = 0, dy = 0;
      for (int a = 0; a < (int)content.size(); ++a) {
        deg += content[a] * mt.arc_weight(a);
        dx += content[a] * t.arrows[a].dx;
        dy += content[a] * t.arrows[a].dy;
      }
      CHECK(deg == mt.mu[id]);
      CHECK(dx == mt.window.dx_of(id));
      CHECK(dy == mt.window.dy_of(id));
    }
  }
}

TEST_CASE("omega has degree one in every matching") {
  for (const char* name : {"c3", "conifold", "spp", "dp3"}) {
    TilingSpec t = builtin_tiling(name);
    for (const Matching& m : perfect_matchings(t))
      for (const auto& f : t.faces) {
        int deg = 0;
        for (int ai : f.arrows)
          if (m.contains(ai)) ++deg;
        CHECK(deg == 1);
      }
  }
}

TEST_CASE("children of the c3 root") {
  TilingSpec c3 = builtin_tiling("c3");
  MuTable mt = mu_table(c3, matching_named(c3, {"z"}), 0, 8);
  PathClass root{mt.base_id, 0};
  auto kids = class_children(mt, root);
  REQUIRE(kids.size() == 3);
  std::map<std::string, PathClass> by_name;
  for (const auto& [arrow, child] : kids) by_name[c3.arrows[arrow].name] = child;
  CHECK(by_name["x"].cover_id == mt.window.id(0, 1, 0));
  CHECK(by_name["x"].k == 0);
  CHECK(by_name["y"].cover_id == mt.window.id(0, 0, 1));
  CHECK(by_name["y"].k == 0);
  // the z child lands where mu drops, absorbing the weight
  CHECK(by_name["z"].cover_id == mt.window.id(0, -1, -1));
  CHECK(by_name["z"].k == 0);
}

TEST_CASE("conifold root has two children") {
  TilingSpec con = builtin_tiling("conifold");
  MuTable mt = mu_table(con, reference_matching(con), 0, 8);
  auto kids = class_children(mt, PathClass{mt.base_id, 0});
  CHECK(kids.size() == 2);  // out-arrows x0 and y1
}

TEST_CASE("root has no predecessors; x^2 y has exactly two") {
  TilingSpec c3 = builtin_tiling("c3");
  MuTable mt = mu_table(c3, matching_named(c3, {"z"}), 0, 8);
  CHECK(class_predecessors(mt, PathClass{mt.base_id, 0}).empty());

  PathClass x2y{mt.window.id(0, 2, 1), 0};
  auto preds = class_predecessors(mt, x2y);
  std::set<std::pair<int, int>> got;
  for (const auto& [arrow, p] : preds) got.insert({p.cover_id, p.k});
  std::set<std::pair<int, int>> want{{mt.window.id(0, 1, 1), 0},   // x y
                                     {mt.window.id(0, 2, 0), 0}};  // x^2
  CHECK(got == want);
}

TEST_CASE("children and predecessors are mutually exact") {
  for (const char* name : {"c3", "conifold", "spp"}) {
    TilingSpec t = builtin_tiling(name);
    MuTable mt = mu_table(t, reference_matching(t), 0, 7);
    INFO(name);
    for (int id = 0; id < mt.window.size(); ++id) {
      if (mt.mu[id] < 0 || mt.window.chebyshev(id) > 4) continue;
      for (int k = 0; k <= 2; ++k) {
        PathClass c{id, k};
        for (const auto& [arrow, child] : class_children(mt, c)) {
          CHECK(child.k >= 0);
          bool back = false;
          for (const auto& [arrow2, p] : class_predecessors(mt, child))
            if (arrow2 == arrow && p == c) back = true;
          CHECK(back);
        }
        for (const auto& [arrow, p] : class_predecessors(mt, c)) {
          bool fwd = false;
          for (const auto& [arrow2, child] : class_children(mt, p))
            if (arrow2 == arrow && child == c) fwd = true;
          CHECK(fwd);
        }
      }
    }
  }
}

TEST_CASE("class weights classify classes within a window") {
  for (const char* name : {"c3", "conifold", "spp"}) {
    TilingSpec t = builtin_tiling(name);
    WeightLattice w = weight_lattice(t);
    MuTable mt = mu_table(t, reference_matching(t), 0, 7);
    INFO(name);
    CHECK(class_weight(mt, w, PathClass{mt.base_id, 0}) ==
          std::vector<std::int64_t>(w.lattice_rank, 0));
    // distinct classes get distinct weights
    std::set<std::vector<std::int64_t>> seen;
    int classes = 0;
    for (int id = 0; id < mt.window.size(); ++id) {
      if (mt.mu[id] < 0 || mt.window.chebyshev(id) > 3) continue;
      for (int k = 0; k <= 2; ++k) {
        seen.insert(class_weight(mt, w, PathClass{id, k}));
        ++classes;
      }
    }
    CHECK((int)seen.size() == classes);
  }
  // the pure face cycle above the c3 root weighs omega
  TilingSpec c3 = builtin_tiling("c3");
  WeightLattice w = weight_lattice(c3);
  MuTable mt = mu_table(c3, matching_named(c3, {"z"}), 0, 7);
  CHECK(class_weight(mt, w, PathClass{mt.base_id, 1}) == w.omega_bar);
}

TEST_CASE("class weight equals witness weight plus k omega") {
  TilingSpec spp = builtin_tiling("spp");
  WeightLattice w = weight_lattice(spp);
  MuTable mt = mu_table(spp, reference_matching(spp), 1, 7);
  for (int id = 0; id < mt.window.size(); ++id) {
    if (mt.mu[id] < 0 || mt.window.chebyshev(id) > 3) continue;
    auto w0 = class_weight(mt, w, PathClass{id, 0});
    auto w2 = class_weight(mt, w, PathClass{id, 2});
    for (int j = 0; j < w.lattice_rank; ++j) CHECK(w2[j] - w0[j] == 2 * w.omega_bar[j]);
  }
}

TEST_CASE("the n^3 model of the c3 path poset") {
  TilingSpec c3 = builtin_tiling("c3");
  MuTable mt = mu_table(c3, matching_named(c3, {"z"}), 0, 12);
  auto cls = [&](int p, int q, int r) {
    int a = p - r, b = q - r;
    int mu = std::max({0, -a, -b});
    return PathClass{mt.window.id(0, a, b), r - mu};
  };
  std::set<std::pair<int, int>> seen;
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q)
      for (int r = 0; r <= 3; ++r) {
        PathClass c = cls(p, q, r);
        CHECK(c.k >= 0);
        CHECK(seen.insert({c.cover_id, c.k}).second);  // injective
        // children = multiply by x, y, z
        std::map<std::string, PathClass> kids;
        for (const auto& [arrow, child] : class_children(mt, c))
          kids[c3.arrows[arrow].name] = child;
        CHECK(kids["x"] == cls(p + 1, q, r));
        CHECK(kids["y"] == cls(p, q + 1, r));
        CHECK(kids["z"] == cls(p, q, r + 1));
      }
}

TEST_CASE("the infalling x arc next to the base is canonical") {
  // with M0 = {z}: mu drops from 1 at (-1,0) to 0 at the base while chi(x) = 0
  TilingSpec c3 = builtin_tiling("c3");
  MuTable mt = mu_table(c3, matching_named(c3, {"z"}), 0, 6);
  int tail = mt.window.id(0, -1, 0);
  CHECK(mt.mu[tail] == 1);
  CHECK(in_canonical_matching(mt, tail, c3.arrow_index("x")));
}

TEST_CASE("canonical matching covers interior faces once and ignores M0") {
  for (const char* name : {"c3", "conifold", "spp"}) {
    TilingSpec t = builtin_tiling(name);
    auto matchings = perfect_matchings(t);
    INFO(name);
    std::set<std::pair<int, int>> reference_set;
    for (size_t mi = 0; mi < matchings.size(); ++mi) {
      MuTable mt = mu_table(t, matchings[mi], 0, 7);
      // exactly one canonical arc per interior face
      for (const FaceInstance& inst : face_instances(mt, 5)) {
        int hits = 0;
        bool usable = true;
        for (const CoverArc& arc : inst.arcs) {
          int head = mt.arc_head(arc.tail_id, arc.arrow);
          if (mt.mu[arc.tail_id] < 0 || head < 0 || mt.mu[head] < 0) usable = false;
        }
        if (!usable) continue;
        for (const CoverArc& arc : inst.arcs)
          if (in_canonical_matching(mt, arc.tail_id, arc.arrow)) ++hits;
        CHECK(hits == 1);
      }
      // I0 does not depend on the reference matching
      std::set<std::pair<int, int>> arcs;
      for (const CoverArc& a : canonical_matching_arcs(mt, 4)) arcs.insert({a.tail_id, a.arrow});
      if (mi == 0)
        reference_set = arcs;
      else
        CHECK(arcs == reference_set);
    }
  }
}

TEST_CASE("window guards") {
  TilingSpec c3 = builtin_tiling("c3");
  MuTable mt = mu_table(c3, matching_named(c3, {"z"}), 0, 3);
  PathClass corner{mt.window.id(0, 3, 3), 0};
  CHECK_THROWS_AS(class_children(mt, corner), WindowError);
  CHECK_THROWS_AS(mu_table(c3, matching_named(c3, {"z"}), 0, 0), std::invalid_argument);
}
