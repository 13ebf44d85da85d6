// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#include "simplex.hpp"

#include <cmath>
#include <cstddef>

#include "nafcode/common.hpp"

namespace nafcode::detail {

namespace {

constexpr double kEps = 1e-11;

struct Tableau {
  std::size_t rows;
  std::size_t cols;  // excluding the rhs column
  std::vector<std::vector<double>> t;  // rows + 1 (objective last), cols + 1 entries
  std::vector<std::size_t> basis;

  void pivot(std::size_t pr, std::size_t pc) {
    const double pv = t[pr][pc];
    for (double& v : t[pr]) v /= pv;
    for (std::size_t r = 0; r <= rows; ++r) {
      if (r == pr) continue;
      const double f = t[r][pc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols; ++c) t[r][c] -= f * t[pr][c];
    }
    basis[pr] = pc;
  }

  // Minimizes the objective row (stored as reduced costs) over columns < limit.
  void run(std::size_t limit) {
    while (true) {
      std::size_t pc = cols;
      for (std::size_t c = 0; c < limit; ++c) {
        if (t[rows][c] < -kEps) {
          pc = c;
          break;
        }
      }
      if (pc == cols) return;
      std::size_t pr = rows;
      double ratio = 0.0;
      for (std::size_t r = 0; r < rows; ++r) {
        if (t[r][pc] > kEps) {
          const double q = t[r][cols] / t[r][pc];
          if (pr == rows || q < ratio - kEps || (std::abs(q - ratio) <= kEps && basis[r] < basis[pr])) {
            pr = r;
            ratio = q;
          }
        }
      }
      if (pr == rows) throw InternalError("solve_lp: unbounded program");
      pivot(pr, pc);
    }
  }
};

}  // namespace

double solve_lp(const std::vector<double>& c, const std::vector<std::vector<double>>& a,
                const std::vector<double>& b, std::vector<double>* x) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  std::size_t artificial = 0;
  for (double v : b) artificial += v < 0 ? 1 : 0;

  // Columns: n structural, m slack, artificial.
  Tableau tab;
  tab.rows = m;
  tab.cols = n + m + artificial;
  tab.t.assign(m + 1, std::vector<double>(tab.cols + 1, 0.0));
  tab.basis.assign(m, 0);
  std::size_t next_art = n + m;
  for (std::size_t r = 0; r < m; ++r) {
    const double sign = b[r] < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab.t[r][j] = sign * a[r][j];
    tab.t[r][n + r] = sign;
    tab.t[r][tab.cols] = sign * b[r];
    if (b[r] < 0) {
      tab.t[r][next_art] = 1.0;
      tab.basis[r] = next_art++;
    } else {
      tab.basis[r] = n + r;
    }
  }

  if (artificial > 0) {
    for (std::size_t r = 0; r < m; ++r) {
      if (tab.basis[r] >= n + m) {
        for (std::size_t col = 0; col <= tab.cols; ++col) {
          if (col < n + m || col == tab.cols) tab.t[m][col] -= tab.t[r][col];
        }
      }
    }
    tab.run(tab.cols);
    if (-tab.t[m][tab.cols] > 1e-9) throw InternalError("solve_lp: infeasible program");
    // Drive remaining artificials out of the basis.
    for (std::size_t r = 0; r < m; ++r) {
      if (tab.basis[r] < n + m) continue;
      for (std::size_t col = 0; col < n + m; ++col) {
        if (std::abs(tab.t[r][col]) > kEps) {
          tab.pivot(r, col);
          break;
        }
      }
    }
  }

  std::fill(tab.t[m].begin(), tab.t[m].end(), 0.0);
  for (std::size_t j = 0; j < n; ++j) tab.t[m][j] = c[j];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t bc = tab.basis[r];
    if (bc < n && c[bc] != 0.0) {
      const double f = c[bc];
      for (std::size_t col = 0; col <= tab.cols; ++col) tab.t[m][col] -= f * tab.t[r][col];
    }
  }
  tab.run(n + m);

  if (x != nullptr) {
    x->assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
      if (tab.basis[r] < n) (*x)[tab.basis[r]] = tab.t[r][tab.cols];
    }
  }
  return -tab.t[m][tab.cols];
}

}  // namespace nafcode::detail
