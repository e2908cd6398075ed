#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "branedt/model.hpp"

using namespace branedt;

TEST_CASE("parse the hexagonal one-vertex tiling") {
  TilingSpec t = parse_tiling(
      "# three loops on one vertex\n"
      "vertices 1\n"
      "arrow x 0 0 1 0\n"
      "arrow y 0 0 0 1\n"
      "arrow z 0 0 -1 -1\n"
      "face + x y z\n"
      "face - x z y\n");
  CHECK(t.vertex_count == 1);
  CHECK(t.arrows.size() == 3);
  CHECK(t.faces.size() == 2);
  CHECK(validate_tiling(t).ok);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_tiling("vertices 1\narrow x 0 0 1 0\nface + x w\n"),
                       doctest::Contains("unknown arrow"), ParseError);
  CHECK_THROWS_WITH_AS(parse_tiling("vertices 1\narrow x 0 0 1 0\narrow x 0 0 0 1\n"),
                       doctest::Contains("duplicate arrow name"), ParseError);
  CHECK_THROWS_WITH_AS(parse_tiling("arrow x 0 0 1 0\n"), doctest::Contains("vertices"),
                       ParseError);
  CHECK_THROWS_AS(parse_tiling("vertices 1\narrow x 0 7 1 0\n"), ParseError);
}

TEST_CASE("validation failures name a witness") {
  // drop the minus face: every arrow is then in zero -1 faces
  TilingSpec t = parse_tiling(
      "vertices 1\narrow x 0 0 1 0\narrow y 0 0 0 1\narrow z 0 0 -1 -1\nface + x y z\n");
  ValidationReport rep = validate_tiling(t);
  CHECK(!rep.ok);
  bool found = false;
  for (const auto& i : rep.issues)
    if (i.invariant.find("-1 face") != std::string::npos &&
        i.witness.find("x") != std::string::npos)
      found = true;
  CHECK(found);
}

TEST_CASE("builtins validate and have the advertised shapes") {
  for (const auto& [name, vertices, arrows, faces] :
       {std::tuple{"c3", 1, 3, 2}, std::tuple{"conifold", 2, 4, 2}, std::tuple{"spp", 3, 7, 4},
        std::tuple{"dp3", 6, 12, 6}}) {
    TilingSpec t = builtin_tiling(name);
    INFO(name);
    CHECK(t.vertex_count == vertices);
    CHECK((int)t.arrows.size() == arrows);
    CHECK((int)t.faces.size() == faces);
    CHECK(validate_tiling(t).ok);
  }
  TilingSpec zn = builtin_tiling("c3-zn", 4);
  CHECK(zn.vertex_count == 4);
  CHECK(zn.arrows.size() == 12);
  CHECK(zn.faces.size() == 8);
  CHECK(validate_tiling(zn).ok);

  CHECK_THROWS_AS(builtin_tiling("c3-zn", 1), std::invalid_argument);
  CHECK_THROWS_AS(builtin_tiling("c3-zn"), std::invalid_argument);
  CHECK_THROWS_AS(builtin_tiling("nope"), std::invalid_argument);
}

TEST_CASE("spp face sizes and dp3 face sizes match the potentials") {
  TilingSpec spp = builtin_tiling("spp");
  std::multiset<size_t> sizes;
  for (const auto& f : spp.faces) sizes.insert(f.arrows.size());
  CHECK(sizes == std::multiset<size_t>{3, 3, 4, 4});

  TilingSpec dp3 = builtin_tiling("dp3");
  std::multiset<size_t> sizes3;
  for (const auto& f : dp3.faces) sizes3.insert(f.arrows.size());
  CHECK(sizes3 == std::multiset<size_t>{3, 3, 4, 4, 4, 6});
}

TEST_CASE("tiling file round trip") {
  for (const char* name : {"c3", "conifold", "spp", "dp3"}) {
    TilingSpec t = builtin_tiling(name);
    TilingSpec back = parse_tiling(tiling_to_text(t));
    CHECK(back.vertex_count == t.vertex_count);
    REQUIRE(back.arrows.size() == t.arrows.size());
    for (size_t i = 0; i < t.arrows.size(); ++i) {
      CHECK(back.arrows[i].name == t.arrows[i].name);
      CHECK(back.arrows[i].src == t.arrows[i].src);
      CHECK(back.arrows[i].dst == t.arrows[i].dst);
      CHECK(back.arrows[i].dx == t.arrows[i].dx);
      CHECK(back.arrows[i].dy == t.arrows[i].dy);
    }
    REQUIRE(back.faces.size() == t.faces.size());
    for (size_t f = 0; f < t.faces.size(); ++f) {
      CHECK(back.faces[f].sign == t.faces[f].sign);
      CHECK(back.faces[f].arrows == t.faces[f].arrows);
    }
  }
}

TEST_CASE("every arrow lies in exactly two faces") {
  for (const char* name : {"c3", "conifold", "spp", "dp3"}) {
    TilingSpec t = builtin_tiling(name);
    size_t total = 0;
    for (const auto& f : t.faces) total += f.arrows.size();
    CHECK(total == 2 * t.arrows.size());
  }
}

TEST_CASE("potential terms") {
  TilingSpec c3 = builtin_tiling("c3");
  auto terms = potential_terms(c3);
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].sign == 1);
  CHECK(terms[0].necklace == std::vector<std::string>{"x", "y", "z"});
  CHECK(terms[1].sign == -1);
  CHECK(terms[1].necklace == std::vector<std::string>{"x", "z", "y"});

  TilingSpec con = builtin_tiling("conifold");
  auto cterms = potential_terms(con);
  REQUIRE(cterms.size() == 2);
  CHECK(cterms[0].necklace.size() == 4);
  CHECK(cterms[1].necklace.size() == 4);
  CHECK(cterms[0].sign * cterms[1].sign == -1);
  std::multiset<std::string> a(cterms[0].necklace.begin(), cterms[0].necklace.end());
  std::multiset<std::string> b(cterms[1].necklace.begin(), cterms[1].necklace.end());
  CHECK(a == b);
  CHECK(a == std::multiset<std::string>{"x0", "x1", "y0", "y1"});

  // the two spp triangles carry the loop
  TilingSpec spp = builtin_tiling("spp");
  int triangles_with_loop = 0;
  for (const auto& term : potential_terms(spp))
    if (term.necklace.size() == 3 &&
        std::find(term.necklace.begin(), term.necklace.end(), "x11") != term.necklace.end())
      ++triangles_with_loop;
  CHECK(triangles_with_loop == 2);
}

TEST_CASE("ringel form") {
  TilingSpec c3 = builtin_tiling("c3");
  for (std::int64_t n : {1, 2, 5})
    CHECK(ringel_form(c3, {n}, {n}) == -2 * n * n);

  TilingSpec con = builtin_tiling("conifold");
  CHECK(ringel_form(con, {1, 1}, {1, 1}) == -2);

  TilingSpec spp = builtin_tiling("spp");
  CHECK(ringel_form(spp, {0, 1, 0}, {0, 1, 0}) == 0);  // the loop cancels the diagonal

  CHECK_THROWS_AS(ringel_form(c3, {1, 2}, {1}), std::invalid_argument);
}

TEST_CASE("ringel form is bilinear") {
  TilingSpec spp = builtin_tiling("spp");
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> v(0, 4);
  for (int trial = 0; trial < 50; ++trial) {
    DimVector a{v(rng), v(rng), v(rng)}, a2{v(rng), v(rng), v(rng)}, b{v(rng), v(rng), v(rng)};
    DimVector sum{a[0] + a2[0], a[1] + a2[1], a[2] + a2[2]};
    CHECK(ringel_form(spp, sum, b) == ringel_form(spp, a, b) + ringel_form(spp, a2, b));
    CHECK(ringel_form(spp, b, sum) == ringel_form(spp, b, a) + ringel_form(spp, b, a2));
  }
}

TEST_CASE("weight lattice of the one-vertex tiling") {
  TilingSpec c3 = builtin_tiling("c3");
  WeightLattice w = weight_lattice(c3);
  CHECK(w.ambient_rank == 3);
  CHECK(w.lattice_rank == 3);
  // arrow weights form a basis and omega is their sum
  std::vector<std::int64_t> sum(3, 0);
  for (const auto& aw : w.arrow_weight)
    for (int j = 0; j < 3; ++j) sum[j] += aw[j];
  CHECK(sum == w.omega_bar);
}

TEST_CASE("weight lattice ranks and coord kernel") {
  for (const char* name : {"c3", "conifold", "spp", "dp3"}) {
    TilingSpec t = builtin_tiling(name);
    WeightLattice w = weight_lattice(t);
    INFO(name);
    for (const Int& s : w.invariant_factors) CHECK(s == 1);
    // coord kills every relation row
    for (const auto& rel : w.relation_basis) {
      auto c = w.coord(rel);
      for (auto v : c) CHECK(v == 0);
    }
    // coord(d2 F) is the same for every face
    std::vector<std::int64_t> omega;
    for (const auto& f : t.faces) {
      std::vector<Int> d2(t.arrows.size(), 0);
      for (int ai : f.arrows) d2[ai] += 1;
      auto c = w.coord(d2);
      if (omega.empty())
        omega = c;
      else
        CHECK(omega == c);
    }
    CHECK(omega == w.omega_bar);
  }
  CHECK(weight_lattice(builtin_tiling("conifold")).lattice_rank == 4);
  // rank = |Q1| - (|Q2| - 2) = |Q0| + 2: the face relations always satisfy
  // sum(+faces) = sum(-faces), and nothing else collapses for these tilings
  for (const char* name : {"c3", "conifold", "spp", "dp3"}) {
    TilingSpec t = builtin_tiling(name);
    CHECK(weight_lattice(t).lattice_rank == t.vertex_count + 2);
  }
}

TEST_CASE("positivity certificate") {
  TilingSpec c3 = builtin_tiling("c3");
  WeightLattice w = weight_lattice(c3);
  PositivityCertificate cert = positivity_certificate(c3, w);
  REQUIRE(cert.feasible);
  for (const Rat& v : cert.arrow_value) CHECK(v == rat(2, 3));

  TilingSpec con = builtin_tiling("conifold");
  PositivityCertificate ccert = positivity_certificate(con, weight_lattice(con));
  REQUIRE(ccert.feasible);
  for (const Rat& v : ccert.arrow_value) CHECK(v == rat(1, 2));

  for (const char* name : {"spp", "dp3"}) {
    TilingSpec t = builtin_tiling(name);
    WeightLattice wl = weight_lattice(t);
    PositivityCertificate cert2 = positivity_certificate(t, wl);
    INFO(name);
    REQUIRE(cert2.feasible);
    for (const Rat& v : cert2.arrow_value) CHECK(v > 0);
    // R(omega) = 2 exactly
    Rat total(0);
    for (int j = 0; j < wl.lattice_rank; ++j) total += cert2.functional[j] * rat(wl.omega_bar[j]);
    CHECK(total == rat(2));
  }
}
