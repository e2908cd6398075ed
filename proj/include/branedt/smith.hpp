#pragma once

#include <vector>

#include "branedt/rational.hpp"

namespace branedt {

using IntMatrix = std::vector<std::vector<Int>>;

// Smith normal form S = U * A * V with U, V unimodular and
// S diagonal, s_1 | s_2 | ... | s_r, s_i > 0.
struct SmithResult {
  std::vector<Int> invariants;  // the nonzero diagonal entries s_1..s_r
  IntMatrix u;                  // rows x rows
  IntMatrix v;                  // cols x cols
  int rank = 0;
};

SmithResult smith_normal_form(IntMatrix a);

IntMatrix identity_matrix(int n);
IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);

}  // namespace branedt
