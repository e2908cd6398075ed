#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "branedt/dimer.hpp"
#include "oracles.hpp"

using namespace branedt;

namespace {

std::vector<std::pair<int, int>> ideal_key(const Ideal& i) {
  std::vector<std::pair<int, int>> k;
  for (const PathClass& pc : i.elements) k.push_back({pc.cover_id, pc.k});
  std::sort(k.begin(), k.end());
  return k;
}

}  // namespace

TEST_CASE("the empty ideal maps to the canonical matching") {
  TilingSpec c3 = builtin_tiling("c3");
  Workspace ws{c3};
  const MuTable& mt = ws.mu(0, 8);
  Ideal empty;
  empty.dim_vector.assign(1, 0);
  MatchingDiff d = ideal_to_matching(mt, empty);
  CHECK(d.added.empty());
  CHECK(d.removed.empty());
  HeightField h = height_field(mt, d);
  CHECK(h.total == 0);
  CHECK(h.values.empty());
  Ideal back = matching_to_ideal(mt, d);
  CHECK(back.elements.empty());
}

TEST_CASE("the one-box ideal flips one arc pair per incident face") {
  TilingSpec c3 = builtin_tiling("c3");
  Workspace ws{c3};
  const MuTable& mt = ws.mu(0, 8);
  Ideal box;
  box.elements.push_back({mt.base_id, 0});
  box.dim_vector.assign(1, 1);
  MatchingDiff d = ideal_to_matching(mt, box);
  CHECK(!d.added.empty());
  CHECK(d.added.size() == d.removed.size());
  HeightField h = height_field(mt, d);
  CHECK(h.total == 1);
  REQUIRE(h.values.size() == 1);
  CHECK(h.values.begin()->first == mt.base_id);
  CHECK(h.values.begin()->second == 1);
  Ideal back = matching_to_ideal(mt, d);
  CHECK(ideal_key(back) == ideal_key(box));
}

TEST_CASE("roundtrip over all small ideals") {
  for (const auto& [name, base] : {std::pair{"conifold", 0}, std::pair{"spp", 1}}) {
    TilingSpec t = builtin_tiling(name);
    Workspace ws{t};
    int radius = ws.default_radius(6);
    const MuTable& mt = ws.mu(base, radius);
    IdealEnumerator en(mt, ws.arrow_rdeg(), radius - 2);
    long long checked = 0;
    en.enumerate_all(6, [&](const Ideal& om) {
      MatchingDiff d = ideal_to_matching(mt, om);
      HeightField h = height_field(mt, d);
      CHECK(h.total == (long long)om.elements.size());
      Ideal back = matching_to_ideal(mt, d);
      CHECK(ideal_key(back) == ideal_key(om));
      ++checked;
    });
    INFO(name);
    CHECK(checked > 1);
  }
}

TEST_CASE("diff serialization is sorted and stable") {
  TilingSpec c3 = builtin_tiling("c3");
  Workspace ws{c3};
  const MuTable& mt = ws.mu(0, 8);
  Ideal box;
  box.elements.push_back({mt.base_id, 0});
  box.dim_vector.assign(1, 1);
  MatchingDiff d = ideal_to_matching(mt, box);
  std::string text = diff_to_string(mt, d);
  CHECK(text.find("add ") == 0);
  CHECK(diff_to_string(mt, d) == text);
}

TEST_CASE("hand-built diffs are rejected") {
  TilingSpec c3 = builtin_tiling("c3");
  Workspace ws{c3};
  const MuTable& mt = ws.mu(0, 8);

  // an added arc that is already canonical
  auto arcs = canonical_matching_arcs(mt, 3);
  REQUIRE(!arcs.empty());
  MatchingDiff bad1;
  bad1.added.push_back(arcs.front());
  CHECK_THROWS_AS(height_field(mt, bad1), DimerError);

  // a lone removal breaks exactness around its faces
  MatchingDiff bad2;
  bad2.removed.push_back(arcs.front());
  CHECK_THROWS_AS(height_field(mt, bad2), DimerError);

  // translating a genuine box diff misaligns it with the canonical matching:
  // integration must fail one way or another
  Ideal box;
  box.elements.push_back({mt.base_id, 0});
  box.dim_vector.assign(1, 1);
  MatchingDiff d = ideal_to_matching(mt, box);
  MatchingDiff shifted;
  bool valid_shift = true;
  for (const CoverArc& a : d.added) {
    int id = mt.window.id(mt.window.vertex_of(a.tail_id), mt.window.dx_of(a.tail_id) + 3,
                          mt.window.dy_of(a.tail_id) + 2);
    if (id < 0) valid_shift = false;
    else shifted.added.push_back({id, a.arrow});
  }
  for (const CoverArc& a : d.removed) {
    int id = mt.window.id(mt.window.vertex_of(a.tail_id), mt.window.dx_of(a.tail_id) + 3,
                          mt.window.dy_of(a.tail_id) + 2);
    if (id < 0) valid_shift = false;
    else shifted.removed.push_back({id, a.arrow});
  }
  REQUIRE(valid_shift);
  CHECK_THROWS_AS(matching_to_ideal(mt, shifted), DimerError);
}

TEST_CASE("matching route equals ideal route on small builtins") {
  for (const auto& [name, base] : {std::pair{"c3", 0}, std::pair{"conifold", 0},
                                   std::pair{"spp", 1}, std::pair{"dp3", 1}}) {
    TilingSpec t = builtin_tiling(name);
    Workspace ws{t};
    SeriesByDim za = partition_function(ws, base, 4);
    ZViaMatchings zb = z_via_matchings(ws, base, 4);
    INFO(std::string(name));
    CHECK(za.coeff == zb.series.coeff);
    // partial assignments may integrate negative before a face constraint
    // kills them; accepted matchings never do
    CHECK(zb.matchings_accepted >= 1);
  }
}

TEST_CASE("two routes agree on the larger builtins") {
  {
    Workspace ws(builtin_tiling("dp3"));
    SeriesByDim za = partition_function(ws, 1, 6);
    ZViaMatchings zb = z_via_matchings(ws, 1, 6);
    CHECK(za.coeff == zb.series.coeff);
  }
  {
    Workspace ws(builtin_tiling("c3-zn", 4));
    SeriesByDim za = partition_function(ws, 1, 6);
    ZViaMatchings zb = z_via_matchings(ws, 1, 6);
    CHECK(za.coeff == zb.series.coeff);
  }
}

TEST_CASE("matching route with max_size zero sees only the canonical matching") {
  TilingSpec c3 = builtin_tiling("c3");
  Workspace ws{c3};
  ZViaMatchings z = z_via_matchings(ws, 0, 0);
  CHECK(z.matchings_accepted == 1);
  CHECK(z.series.coeff.size() == 1);
  CHECK(z.series.coeff.begin()->second == 1);
}
