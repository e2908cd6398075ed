#pragma once

#include <vector>

#include "branedt/rational.hpp"

namespace branedt {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rat objective;
  std::vector<Rat> x;
};

// Dense two-phase simplex over exact rationals, Bland's rule.
// All variables are nonnegative; model free variables as differences.
class LinearProgram {
 public:
  explicit LinearProgram(int num_vars) : num_vars_(num_vars) {}

  void add_le(std::vector<Rat> coeffs, Rat rhs) { add(std::move(coeffs), std::move(rhs), -1); }
  void add_ge(std::vector<Rat> coeffs, Rat rhs) { add(std::move(coeffs), std::move(rhs), +1); }
  void add_eq(std::vector<Rat> coeffs, Rat rhs) { add(std::move(coeffs), std::move(rhs), 0); }

  LPResult maximize(const std::vector<Rat>& objective) const;

  int num_vars() const { return num_vars_; }

 private:
  struct Row {
    std::vector<Rat> a;
    Rat b;
    int sense;  // -1: <=, 0: ==, +1: >=
  };
  void add(std::vector<Rat> coeffs, Rat rhs, int sense);

  int num_vars_;
  std::vector<Row> rows_;
};

}  // namespace branedt
