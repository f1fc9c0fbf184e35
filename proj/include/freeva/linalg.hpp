// SPDX-License-Identifier: MIT
//
// Dense exact linear algebra over the rationals: Gaussian elimination,
// inversion, determinants, and unique solutions of (possibly overdetermined)
// linear systems.  Also a generic cofactor determinant usable over any
// commutative ring type (e.g. polynomials), kept as an independent oracle.

#pragma once

#include <optional>
#include <vector>

#include "freeva/rational.hpp"

namespace freeva {

using Vec = std::vector<Rational>;
using Matrix = std::vector<Vec>;

inline Matrix zero_matrix(size_t r, size_t c) { return Matrix(r, Vec(c, 0)); }
inline Matrix zero_matrix(size_t n) { return zero_matrix(n, n); }

inline Matrix identity_matrix(size_t k) {
  Matrix m = zero_matrix(k, k);
  for (size_t i = 0; i < k; ++i) m[i][i] = 1;
  return m;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.empty() || b.empty()) return {};
  if (a[0].size() != b.size()) throw error("matmul: shape mismatch");
  Matrix out = zero_matrix(a.size(), b[0].size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

inline Matrix mat_add(const Matrix& a, const Matrix& b, const Rational& s = 1) {
  Matrix out = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) out[i][j] += s * b[i][j];
  return out;
}

inline Matrix mat_scale(const Matrix& a, const Rational& s) {
  Matrix out = a;
  for (auto& row : out)
    for (auto& x : row) x *= s;
  return out;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) {
  return mat_add(matmul(a, b), matmul(b, a), -1);
}

inline Rational trace(const Matrix& a) {
  Rational t = 0;
  for (size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

inline Rational trace_form(const Matrix& a, const Matrix& b) {
  return trace(matmul(a, b));
}

/// Elementary matrix unit E_ab (1-indexed) in gl_n.
inline Matrix matrix_unit(size_t n, size_t a, size_t b) {
  Matrix m = zero_matrix(n, n);
  m[a - 1][b - 1] = 1;
  return m;
}

/// Determinant by rational Gaussian elimination with pivoting.
inline Rational determinant(Matrix m) {
  const size_t k = m.size();
  Rational det = 1;
  for (size_t col = 0; col < k; ++col) {
    size_t piv = col;
    while (piv < k && m[piv][col] == 0) ++piv;
    if (piv == k) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Rational inv = Rational(1) / m[col][col];
    for (size_t r = col + 1; r < k; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] * inv;
      for (size_t c = col; c < k; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

/// Inverse by Gauss-Jordan; throws on singular input.
inline Matrix invert(Matrix m) {
  const size_t k = m.size();
  Matrix inv = identity_matrix(k);
  for (size_t col = 0; col < k; ++col) {
    size_t piv = col;
    while (piv < k && m[piv][col] == 0) ++piv;
    if (piv == k) throw error("invert: singular matrix");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Rational d = m[col][col];
    for (size_t c = 0; c < k; ++c) {
      m[col][c] /= d;
      inv[col][c] /= d;
    }
    for (size_t r = 0; r < k; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (size_t c = 0; c < k; ++c) {
        m[r][c] -= f * m[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

/// Unique exact solution of A x = b (A may have more rows than columns).
/// Returns nullopt when inconsistent; throws when the solution space is
/// positive-dimensional, because callers here always expect uniqueness.
inline std::optional<Vec> solve_unique(Matrix a, Vec b) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  size_t rank = 0;
  std::vector<size_t> pivot_col;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    Rational d = a[rank][col];
    for (size_t c = col; c <= cols; ++c) a[rank][c] /= d;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (size_t c = col; c <= cols; ++c) a[r][c] -= f * a[rank][c];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (size_t r = rank; r < rows; ++r)
    if (a[r][cols] != 0) return std::nullopt;
  if (rank < cols) throw error("solve_unique: underdetermined system");
  Vec x(cols, 0);
  for (size_t r = 0; r < rank; ++r) x[pivot_col[r]] = a[r][cols];
  return x;
}

/// Nontrivial kernel test: returns a basis of the null space of A.
inline std::vector<Vec> null_space(Matrix a) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  size_t rank = 0;
  std::vector<long> pivot_of_col(cols, -1);
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    Rational d = a[rank][col];
    for (size_t c = col; c < cols; ++c) a[rank][c] /= d;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (size_t c = col; c < cols; ++c) a[r][c] -= f * a[rank][c];
    }
    pivot_of_col[col] = long(rank);
    ++rank;
  }
  std::vector<Vec> basis;
  for (size_t col = 0; col < cols; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    Vec v(cols, 0);
    v[col] = 1;
    for (size_t c = 0; c < cols; ++c)
      if (pivot_of_col[c] >= 0) v[c] = -a[size_t(pivot_of_col[c])][col];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Cofactor (Laplace) expansion along the first row; works over any
/// commutative ring type with +, *, unary -, and construction from int.
/// Exponential in size, intended as an independent small-matrix oracle.
template <typename T>
T determinant_cofactor(const std::vector<std::vector<T>>& m) {
  const size_t k = m.size();
  if (k == 0) return T(1);
  if (k == 1) return m[0][0];
  T det(0);
  for (size_t j = 0; j < k; ++j) {
    std::vector<std::vector<T>> minor;
    minor.reserve(k - 1);
    for (size_t r = 1; r < k; ++r) {
      std::vector<T> row;
      row.reserve(k - 1);
      for (size_t c = 0; c < k; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    T term = m[0][j] * determinant_cofactor(minor);
    if (j % 2 == 0)
      det = det + term;
    else
      det = det + (-term);
  }
  return det;
}

/// Dual basis coefficients: given basis Gram matrix G (w.r.t. some invariant
/// form), column i of the result expresses the i-th dual vector in the
/// original basis:  x^i = sum_j inv(G)_{ji} x_j.
inline Matrix dual_basis_coefficients(const Matrix& gram) { return invert(gram); }

}  // namespace freeva
