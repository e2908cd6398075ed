#include "branedt/simplex.hpp"

#include <cassert>
#include <stdexcept>

namespace branedt {

void LinearProgram::add(std::vector<Rat> coeffs, Rat rhs, int sense) {
  if ((int)coeffs.size() != num_vars_) throw std::invalid_argument("constraint width mismatch");
  rows_.push_back(Row{std::move(coeffs), std::move(rhs), sense});
}

namespace {

struct Tableau {
  std::vector<std::vector<Rat>> t;  // m rows, width ncols+1 (last = rhs)
  std::vector<Rat> z;               // reduced-cost row, width ncols+1
  std::vector<int> basis;           // basic column per row
  std::vector<char> allowed;        // columns eligible to enter
  int ncols = 0;

  void pivot(int r, int c) {
    Rat p = t[r][c];
    for (auto& v : t[r]) v /= p;
    for (int i = 0; i < (int)t.size(); ++i) {
      if (i == r || t[i][c] == 0) continue;
      Rat f = t[i][c];
      for (int j = 0; j <= ncols; ++j) t[i][j] -= f * t[r][j];
    }
    if (z[c] != 0) {
      Rat f = z[c];
      for (int j = 0; j <= ncols; ++j) z[j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Bland's rule; returns false on unbounded.
  bool run() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < ncols; ++j)
        if (allowed[j] && z[j] < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rat best;
      for (int i = 0; i < (int)t.size(); ++i) {
        if (t[i][enter] <= 0) continue;
        Rat ratio = t[i][ncols] / t[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  // rebuild the reduced-cost row for maximizing c
  void set_objective(const std::vector<Rat>& c) {
    z.assign(ncols + 1, Rat(0));
    for (int j = 0; j < (int)c.size(); ++j) z[j] = -c[j];
    for (int i = 0; i < (int)t.size(); ++i) {
      int b = basis[i];
      if (z[b] == 0) continue;
      Rat f = z[b];
      for (int j = 0; j <= ncols; ++j) z[j] -= f * t[i][j];
    }
  }
};

}  // namespace

LPResult LinearProgram::maximize(const std::vector<Rat>& objective) const {
  assert((int)objective.size() == num_vars_);
  int m = (int)rows_.size();

  // column layout: structural | slack/surplus | artificial
  int nslack = 0;
  for (const auto& r : rows_) nslack += (r.sense != 0);
  Tableau tab;
  tab.ncols = num_vars_ + nslack + m;  // at most one artificial per row
  tab.t.assign(m, std::vector<Rat>(tab.ncols + 1, Rat(0)));
  tab.basis.assign(m, -1);
  tab.allowed.assign(tab.ncols, 1);

  int scol = num_vars_;
  int acol = num_vars_ + nslack;
  std::vector<int> artificial;
  for (int i = 0; i < m; ++i) {
    Row r = rows_[i];
    if (r.b < 0) {  // normalize rhs >= 0
      for (auto& v : r.a) v = -v;
      r.b = -r.b;
      r.sense = -r.sense;
    }
    for (int j = 0; j < num_vars_; ++j) tab.t[i][j] = r.a[j];
    tab.t[i][tab.ncols] = r.b;
    if (r.sense == -1) {
      tab.t[i][scol] = 1;  // slack, basic
      tab.basis[i] = scol++;
    } else {
      if (r.sense == +1) tab.t[i][scol++] = -1;  // surplus
      tab.t[i][acol] = 1;                        // artificial, basic
      tab.basis[i] = acol;
      artificial.push_back(acol++);
    }
  }

  LPResult res;
  if (!artificial.empty()) {
    std::vector<Rat> phase1(tab.ncols, Rat(0));
    for (int a : artificial) phase1[a] = Rat(-1);
    tab.set_objective(phase1);
    tab.run();  // bounded below by 0, cannot be unbounded
    if (tab.z[tab.ncols] != 0) {
      res.status = LPStatus::Infeasible;
      return res;
    }
    // drive basic artificials out, drop redundant rows
    for (int i = 0; i < m; ++i) {
      bool is_art = tab.basis[i] >= num_vars_ + nslack;
      if (!is_art) continue;
      int c = -1;
      for (int j = 0; j < num_vars_ + nslack; ++j)
        if (tab.t[i][j] != 0) {
          c = j;
          break;
        }
      if (c >= 0) tab.pivot(i, c);
      // else: the row is all zero in real columns; leave the artificial
      // basic at value 0, it can never re-enter (banned below)
    }
    for (int a : artificial) tab.allowed[a] = 0;
  }

  std::vector<Rat> c2(tab.ncols, Rat(0));
  for (int j = 0; j < num_vars_; ++j) c2[j] = objective[j];
  tab.set_objective(c2);
  if (!tab.run()) {
    res.status = LPStatus::Unbounded;
    return res;
  }

  res.status = LPStatus::Optimal;
  res.objective = tab.z[tab.ncols];
  res.x.assign(num_vars_, Rat(0));
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < num_vars_) res.x[tab.basis[i]] = tab.t[i][tab.ncols];
  return res;
}

}  // namespace branedt
