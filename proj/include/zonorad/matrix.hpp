#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "zonorad/rational.hpp"

namespace zr {

// Dense row-major matrix over an exact scalar type (Int or Rat).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_)
        throw Error(ErrorKind::BadInput, "ragged matrix initializer");
      for (const auto& v : row) data_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_,
                          data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_)
      throw Error(ErrorKind::DimensionMismatch, "matrix product shape");
    Matrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
      }
    return p;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < cols_; ++k)
      std::swap((*this)(i, k), (*this)(j, k));
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
  }
  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, const T& c) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) += c * (*this)(j, k);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < rows_; ++k)
      std::swap((*this)(k, i), (*this)(k, j));
  }
  void negate_col(std::size_t i) {
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) = -(*this)(k, i);
  }
  // col_i += c * col_j
  void add_col(std::size_t i, std::size_t j, const T& c) {
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) += c * (*this)(k, j);
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

// Cast a rational matrix with unit denominators back to integers.
inline IntMatrix to_int(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (den(m(i, j)) != 1)
        throw Error(ErrorKind::BadInput, "matrix entry is not an integer");
      r(i, j) = num(m(i, j));
    }
  return r;
}

inline RatVec to_rat(const IntVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::LengthMismatch, "dot product length mismatch");
  T s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot(const IntVec& a, const RatVec& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::LengthMismatch, "dot product length mismatch");
  Rat s;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

// Exact determinant by fraction-free elimination on a rational copy.
inline Rat det(const RatMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorKind::DimensionMismatch, "determinant of non-square");
  std::size_t n = m.rows();
  RatMatrix a = m;
  Rat result(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != c) {
      a.swap_rows(piv, c);
      result = -result;
    }
    result *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rat f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return result;
}

inline Int det(const IntMatrix& m) {
  Rat d = det(to_rat(m));
  return num(d);
}

// Rank over Q by Gaussian elimination.
inline std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    a.swap_rows(piv, r);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rat f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

inline std::size_t rank(const IntMatrix& m) { return rank(to_rat(m)); }

// Inverse of a square rational matrix; throws SingularInput.
inline RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorKind::DimensionMismatch, "inverse of non-square");
  std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) throw Error(ErrorKind::SingularInput, "singular matrix");
    if (piv != c) {
      a.swap_rows(piv, c);
      inv.swap_rows(piv, c);
    }
    Rat p = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

// Solve M x = b for square invertible M.
inline RatVec solve(const RatMatrix& m, const RatVec& b) {
  RatMatrix inv = inverse(m);
  RatVec x(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rat s;
    for (std::size_t j = 0; j < m.cols(); ++j) s += inv(i, j) * b[j];
    x[i] = s;
  }
  return x;
}

}  // namespace zr
