#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "zonorad/matrix.hpp"
#include "zonorad/rational.hpp"

namespace zr {

struct HnfResult {
  IntMatrix H;  // row-style Hermite normal form
  IntMatrix U;  // unimodular, U * M = H
};

// Row-style HNF: pivots positive, entries above a pivot reduced into
// [0, pivot), zero rows at the bottom. U is accumulated from the row
// operations, so U*M = H and |det U| = 1.
inline HnfResult hermite_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(rows);
  std::size_t pr = 0;  // next pivot row
  for (std::size_t c = 0; c < cols && pr < rows; ++c) {
    // Euclid on the column until a single nonzero entry remains at pr.
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = pr; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        if (best == rows || abs_int(h(i, c)) < abs_int(h(best, c))) best = i;
      }
      if (best == rows) break;  // column is zero below pr
      if (best != pr) {
        h.swap_rows(best, pr);
        u.swap_rows(best, pr);
      }
      bool cleared = true;
      for (std::size_t i = pr + 1; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        Int q = h(i, c) / h(pr, c);  // truncated; loop handles remainders
        if (q != 0) {
          h.add_row(i, pr, -q);
          u.add_row(i, pr, -q);
        }
        if (h(i, c) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (h(pr, c) == 0) continue;  // no pivot in this column
    if (h(pr, c) < 0) {
      h.negate_row(pr);
      u.negate_row(pr);
    }
    for (std::size_t i = 0; i < pr; ++i) {
      Int q = h(i, c) / h(pr, c);
      if (h(i, c) < 0 && q * h(pr, c) != h(i, c)) --q;  // floor division
      if (q != 0) {
        h.add_row(i, pr, -q);
        u.add_row(i, pr, -q);
      }
    }
    ++pr;
  }
  return {std::move(h), std::move(u)};
}

struct SnfResult {
  IntMatrix S;     // diagonal with d_i | d_{i+1}, d_i >= 0
  IntMatrix P;     // unimodular, P * M * Q = S
  IntMatrix Q;     // unimodular
  IntMatrix Qinv;  // Q^{-1}, maintained alongside
};

inline SnfResult smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix s = m;
  IntMatrix p = IntMatrix::identity(rows);
  IntMatrix q = IntMatrix::identity(cols);
  IntMatrix qinv = IntMatrix::identity(cols);

  auto col_add = [&](std::size_t dst, std::size_t src, const Int& c) {
    s.add_col(dst, src, c);
    q.add_col(dst, src, c);
    qinv.add_row(src, dst, -c);  // inverse op applied on the left
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    s.swap_cols(a, b);
    q.swap_cols(a, b);
    qinv.swap_rows(a, b);
  };
  auto col_negate = [&](std::size_t a) {
    s.negate_col(a);
    q.negate_col(a);
    qinv.negate_row(a);
  };

  const std::size_t k = std::min(rows, cols);
  for (std::size_t t = 0; t < k; ++t) {
    // Move a minimal nonzero entry of the trailing block to (t,t).
    for (;;) {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (s(i, j) == 0) continue;
          if (bi == rows || abs_int(s(i, j)) < abs_int(s(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      if (bi == rows) goto done;  // trailing block is zero
      if (bi != t) {
        s.swap_rows(bi, t);
        p.swap_rows(bi, t);
      }
      if (bj != t) col_swap(bj, t);
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s(i, t) == 0) continue;
        Int f = s(i, t) / s(t, t);
        if (f != 0) {
          s.add_row(i, t, -f);
          p.add_row(i, t, -f);
        }
        if (s(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s(t, j) == 0) continue;
        Int f = s(t, j) / s(t, t);
        if (f != 0) col_add(j, t, -f);
        if (s(t, j) != 0) dirty = true;
      }
      if (!dirty) break;
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      p.negate_row(t);
    }
    // Restore divisibility d_t | s(i,j) by folding offending entries in.
    for (std::size_t i = t + 1; i < rows; ++i)
      for (std::size_t j = t + 1; j < cols; ++j)
        if (s(i, j) % s(t, t) != 0) {
          col_add(t, j, 1);
          // re-run the elimination for this pivot
          --t;
          goto next;
        }
  next:;
  }
done:
  return {std::move(s), std::move(p), std::move(q), std::move(qinv)};
}

// Basis of the saturated integer kernel {l in Z^m : M*l = 0}, returned as
// rows in HNF-canonical form. Full-rank M yields an empty (0 x m) basis.
inline IntMatrix integer_kernel_basis(const IntMatrix& m) {
  auto [h, u] = hermite_normal_form(m.transposed());
  std::size_t r = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (h(i, j) != 0) {
        zero = false;
        break;
      }
    if (!zero) ++r;
  }
  IntMatrix ker(h.rows() - r, m.cols());
  for (std::size_t i = r; i < h.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) ker(i - r, j) = u(i, j);
  return hermite_normal_form(ker).H;
}

// Kernel of a rational matrix: each row (equation) is scaled by its
// denominator lcm, which leaves the solution set unchanged.
inline IntMatrix integer_kernel_basis(const RatMatrix& m) {
  IntMatrix cleared(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) l = lcm_int(l, den(m(i, j)));
    if (l == 0) l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j)
      cleared(i, j) = num(m(i, j)) * (l / den(m(i, j)));
  }
  return integer_kernel_basis(cleared);
}

// Completes the rows of B (a basis of a primitive sublattice of Z^m) to a
// unimodular m x m matrix whose first rows are exactly B.
inline IntMatrix extend_to_unimodular(const IntMatrix& b) {
  const std::size_t n = b.rows(), m = b.cols();
  if (n > m)
    throw Error(ErrorKind::BadParameters, "more basis rows than columns");
  SnfResult snf = smith_normal_form(b);
  for (std::size_t i = 0; i < n; ++i)
    if (snf.S(i, i) != 1)
      throw Error(ErrorKind::NotPrimitive,
                  "rows do not span a primitive sublattice (invariant factor " +
                      snf.S(i, i).str() + ")");
  // With P*B*Q = [I|0]: B = P^{-1}[I|0]Q^{-1}, so the last m-n rows of
  // Q^{-1} complete B to a unimodular matrix.
  IntMatrix w(m, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) w(i, j) = b(i, j);
  for (std::size_t i = n; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) w(i, j) = snf.Qinv(i, j);
  return w;
}

// Within-subspace dual: rows b_j lie in the row span of V and satisfy
// a_i . b_j = delta_ij. Solves the Gram system G X = V.
inline RatMatrix dual_basis_subspace(const RatMatrix& v) {
  RatMatrix gram(v.rows(), v.rows());
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.rows(); ++j) gram(i, j) = dot(v.row(i), v.row(j));
  RatMatrix ginv;
  try {
    ginv = inverse(gram);
  } catch (const Error&) {
    throw Error(ErrorKind::SingularInput, "rows are linearly dependent");
  }
  return ginv * v;
}

// Full-space dual of a square invertible matrix (inverse transpose), or
// the within-subspace dual for a flat row basis.
inline RatMatrix dual_basis(const RatMatrix& v) {
  if (v.rows() == v.cols()) {
    try {
      return inverse(v).transposed();
    } catch (const Error&) {
      throw Error(ErrorKind::SingularInput, "rows are linearly dependent");
    }
  }
  return dual_basis_subspace(v);
}

// Determinant of the square submatrix selected by row set I and column
// set J (0-based indices).
template <class T>
Rat minor_det(const Matrix<T>& m, const std::vector<std::size_t>& rows_sel,
              const std::vector<std::size_t>& cols_sel) {
  if (rows_sel.size() != cols_sel.size())
    throw Error(ErrorKind::BadIndexSet, "index sets of unequal size");
  for (auto i : rows_sel)
    if (i >= m.rows()) throw Error(ErrorKind::BadIndexSet, "row index out of range");
  for (auto j : cols_sel)
    if (j >= m.cols()) throw Error(ErrorKind::BadIndexSet, "column index out of range");
  RatMatrix sub(rows_sel.size(), cols_sel.size());
  for (std::size_t i = 0; i < rows_sel.size(); ++i)
    for (std::size_t j = 0; j < cols_sel.size(); ++j)
      sub(i, j) = Rat(m(rows_sel[i], cols_sel[j]));
  return det(sub);
}

// The extremal generator family {e_1,...,e_n} with the moment-curve tail
// (1, l, l^2, ..., l^{n-1}) for l = 1..m-n. In LGP by the Vandermonde
// determinant.
inline std::vector<IntVec> vandermonde_generators(std::size_t n, std::size_t m) {
  if (n < 1 || m < n)
    throw Error(ErrorKind::BadParameters, "need m >= n >= 1");
  std::vector<IntVec> gens;
  gens.reserve(m);
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, Int(0));
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  for (std::size_t l = 1; l + n <= m; ++l) {
    IntVec v(n);
    Int p = 1;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = p;
      p *= Int(l);
    }
    gens.push_back(std::move(v));
  }
  return gens;
}

}  // namespace zr
