#include "branedt/smith.hpp"

#include <cstdlib>

namespace branedt {

IntMatrix identity_matrix(int n) {
  IntMatrix m(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  int n = (int)a.size();
  int k = n ? (int)a[0].size() : 0;
  int m = k && !b.empty() ? (int)b[0].size() : 0;
  IntMatrix c(n, std::vector<Int>(m, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) {
      if (a[i][j] == 0) continue;
      for (int l = 0; l < m; ++l) c[i][l] += a[i][j] * b[j][l];
    }
  return c;
}

namespace {

void swap_rows(IntMatrix& a, IntMatrix& u, int i, int j) {
  std::swap(a[i], a[j]);
  std::swap(u[i], u[j]);
}

void swap_cols(IntMatrix& a, IntMatrix& v, int i, int j) {
  for (auto& row : a) std::swap(row[i], row[j]);
  for (auto& row : v) std::swap(row[i], row[j]);
}

// row[i] -= q * row[j]
void row_op(IntMatrix& a, IntMatrix& u, int i, int j, const Int& q) {
  int n = (int)a[i].size();
  for (int c = 0; c < n; ++c) a[i][c] -= q * a[j][c];
  int un = (int)u[i].size();
  for (int c = 0; c < un; ++c) u[i][c] -= q * u[j][c];
}

// col[i] -= q * col[j]
void col_op(IntMatrix& a, IntMatrix& v, int i, int j, const Int& q) {
  for (auto& row : a) row[i] -= q * row[j];
  for (auto& row : v) row[i] -= q * row[j];
}

void negate_row(IntMatrix& a, IntMatrix& u, int i) {
  for (auto& x : a[i]) x = -x;
  for (auto& x : u[i]) x = -x;
}

}  // namespace

SmithResult smith_normal_form(IntMatrix a) {
  int rows = (int)a.size();
  int cols = rows ? (int)a[0].size() : 0;
  SmithResult res;
  res.u = identity_matrix(rows);
  res.v = identity_matrix(cols);
  if (rows == 0 || cols == 0) return res;

  int t = 0;
  while (t < rows && t < cols) {
    // pick the nonzero entry of minimal absolute value as pivot
    int pi = -1, pj = -1;
    Int best;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a[i][j] != 0) {
          Int v = abs(a[i][j]);
          if (pi < 0 || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
    if (pi < 0) break;
    swap_rows(a, res.u, t, pi);
    swap_cols(a, res.v, t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Int q = a[i][t] / a[t][t];
        row_op(a, res.u, i, t, q);
        if (a[i][t] != 0) {  // remainder became the smaller pivot
          swap_rows(a, res.u, t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Int q = a[t][j] / a[t][t];
        col_op(a, res.v, j, t, q);
        if (a[t][j] != 0) {
          swap_cols(a, res.v, t, j);
          clean = false;
        }
      }
    }
    if (a[t][t] < 0) negate_row(a, res.u, t);

    // enforce the divisibility chain: if some later entry is not divisible
    // by the pivot, fold its column in and redo this step
    bool redo = false;
    for (int i = t + 1; i < rows && !redo; ++i)
      for (int j = t + 1; j < cols && !redo; ++j)
        if (a[i][j] % a[t][t] != 0) {
          Int minus_one = -1;
          col_op(a, res.v, t, j, minus_one);  // col t += col j
          redo = true;
        }
    if (!redo) ++t;
  }

  res.rank = t;
  for (int i = 0; i < t; ++i) res.invariants.push_back(a[i][i]);
  return res;
}

}  // namespace branedt
