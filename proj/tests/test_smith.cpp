#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "branedt/smith.hpp"

using namespace branedt;

namespace {

IntMatrix from_ints(std::vector<std::vector<long>> rows) {
  IntMatrix m;
  for (auto& r : rows) {
    std::vector<Int> row;
    for (long v : r) row.push_back(Int(v));
    m.push_back(row);
  }
  return m;
}

bool is_diagonal_chain(const IntMatrix& s, int rank) {
  for (int i = 0; i < (int)s.size(); ++i)
    for (int j = 0; j < (int)s[i].size(); ++j)
      if (i != j && s[i][j] != 0) return false;
  for (int i = 0; i + 1 < rank; ++i)
    if (s[i + 1][i + 1] % s[i][i] != 0) return false;
  return true;
}

Int det3(const IntMatrix& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

TEST_CASE("smith normal form on a textbook matrix") {
  IntMatrix a = from_ints({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}});
  SmithResult r = smith_normal_form(a);
  REQUIRE(r.rank == 3);
  CHECK(r.invariants[0] == 2);  // first invariant factor is the gcd of the entries
  // S = U A V must hold and |det U| = |det V| = 1
  IntMatrix s = mat_mul(mat_mul(r.u, a), r.v);
  CHECK(is_diagonal_chain(s, r.rank));
  for (int i = 0; i < r.rank; ++i) CHECK(s[i][i] == r.invariants[i]);
  CHECK(abs(det3(r.u)) == 1);
  CHECK(abs(det3(r.v)) == 1);
  // product of invariants = |det A|
  Int prod = r.invariants[0] * r.invariants[1] * r.invariants[2];
  CHECK(prod == abs(det3(a)));
}

TEST_CASE("smith normal form randomized transform checks") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 5), val(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    int m = dim(rng), n = dim(rng);
    IntMatrix a(m, std::vector<Int>(n));
    for (auto& row : a)
      for (auto& x : row) x = val(rng);
    SmithResult r = smith_normal_form(a);
    IntMatrix s = mat_mul(mat_mul(r.u, a), r.v);
    CHECK(is_diagonal_chain(s, r.rank));
    for (int i = 0; i < r.rank; ++i) {
      CHECK(s[i][i] == r.invariants[i]);
      CHECK(r.invariants[i] > 0);
    }
    for (int i = r.rank; i < std::min(m, n); ++i) CHECK(s[i][i] == 0);
  }
}

TEST_CASE("zero and empty matrices") {
  SmithResult z = smith_normal_form(from_ints({{0, 0}, {0, 0}}));
  CHECK(z.rank == 0);
  CHECK(z.invariants.empty());
}
