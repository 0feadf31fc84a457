#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "zonorad/matrix.hpp"
#include "zonorad/rational.hpp"

namespace zr {

// Exact rational simplex for  min c.x  s.t.  A x = b, x >= 0,  with Bland's
// anti-cycling rule. Problem sizes here are tiny (gauge evaluations), so a
// dense two-phase tableau is plenty.
class Simplex {
 public:
  struct Solution {
    Rat value;
    RatVec x;
  };

  // Returns nullopt when infeasible; throws on unbounded problems (which
  // do not occur for the gauge formulation).
  static std::optional<Solution> solve(const RatMatrix& a, const RatVec& b,
                                       const RatVec& c) {
    const std::size_t m = a.rows(), n = a.cols();
    // Tableau: n structural + m artificial columns, plus rhs.
    RatMatrix t(m + 1, n + m + 1);
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
      Rat sign = b[i] < 0 ? Rat(-1) : Rat(1);
      for (std::size_t j = 0; j < n; ++j) t(i, j) = sign * a(i, j);
      t(i, n + i) = 1;
      t(i, n + m) = sign * b[i];
      basis[i] = n + i;
    }
    // Phase 1: minimize the sum of artificials.
    for (std::size_t j = 0; j < n + m; ++j) {
      Rat s;
      for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n) s += t(i, j);
      t(m, j) = (j >= n ? Rat(1) : Rat(0)) - s;
    }
    Rat rhs1;
    for (std::size_t i = 0; i < m; ++i) rhs1 += t(i, n + m);
    t(m, n + m) = -rhs1;
    run(t, basis, n + m);
    if (t(m, n + m) != 0) return std::nullopt;  // infeasible
    // Drive any artificial still in the basis out (or its row is redundant).
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n) continue;
      std::size_t enter = n;
      for (std::size_t j = 0; j < n; ++j)
        if (t(i, j) != 0) {
          enter = j;
          break;
        }
      if (enter < n) pivot(t, basis, i, enter);
    }
    // Phase 2 objective on structural columns only.
    for (std::size_t j = 0; j <= n + m; ++j) t(m, j) = 0;
    for (std::size_t j = 0; j < n; ++j) t(m, j) = c[j];
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] >= n || c[basis[i]] == 0) continue;
      Rat f = c[basis[i]];
      for (std::size_t j = 0; j <= n + m; ++j) t(m, j) -= f * t(i, j);
    }
    run(t, basis, n);  // artificials are not eligible to re-enter
    Solution sol;
    sol.x.assign(n, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] < n) sol.x[basis[i]] = t(i, t.cols() - 1);
    sol.value = -t(m, t.cols() - 1);
    return sol;
  }

 private:
  static void pivot(RatMatrix& t, std::vector<std::size_t>& basis,
                    std::size_t row, std::size_t col) {
    const std::size_t cols = t.cols();
    Rat p = t(row, col);
    for (std::size_t j = 0; j < cols; ++j) t(row, j) /= p;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (i == row || t(i, col) == 0) continue;
      Rat f = t(i, col);
      for (std::size_t j = 0; j < cols; ++j) t(i, j) -= f * t(row, j);
    }
    basis[row] = col;
  }

  static void run(RatMatrix& t, std::vector<std::size_t>& basis,
                  std::size_t eligible_cols) {
    const std::size_t m = t.rows() - 1;
    const std::size_t rhs = t.cols() - 1;
    for (;;) {
      // Bland: lowest-index column with negative reduced cost.
      std::size_t col = eligible_cols;
      for (std::size_t j = 0; j < eligible_cols; ++j)
        if (t(m, j) < 0) {
          col = j;
          break;
        }
      if (col == eligible_cols) return;  // optimal
      // Bland: ratio test, ties broken by lowest basis index.
      std::size_t row = m;
      Rat best;
      for (std::size_t i = 0; i < m; ++i) {
        if (t(i, col) <= 0) continue;
        Rat ratio = t(i, rhs) / t(i, col);
        if (row == m || ratio < best ||
            (ratio == best && basis[i] < basis[row])) {
          row = i;
          best = ratio;
        }
      }
      if (row == m)
        throw Error(ErrorKind::BadParameters, "unbounded linear program");
      pivot(t, basis, row, col);
    }
  }
};

}  // namespace zr
