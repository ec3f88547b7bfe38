#pragma once

#include <cstddef>
#include <vector>

#include "tropconn/rational.hpp"

namespace tropconn {

using QMatrix = std::vector<QVector>;  // row-major

struct RowEchelon {
  QMatrix rows;                      // reduced rows, pivot entries equal to 1
  std::vector<std::size_t> pivots;   // pivot column of each row
  std::size_t rank() const { return rows.size(); }
};

/// Reduced row echelon form by exact Gauss-Jordan elimination. Only the first
/// `pivot_cols` columns are eligible as pivots (pass the full width for the
/// usual RREF; pass fewer to keep trailing columns as an augmented part).
inline RowEchelon reduced_row_echelon(QMatrix m, std::size_t pivot_cols) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < m[i].size(); ++j)
        if (sgn(m[r][j]) != 0) m[i][j] -= f * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

inline RowEchelon reduced_row_echelon(const QMatrix& m) {
  return reduced_row_echelon(m, m.empty() ? 0 : m.front().size());
}

inline std::size_t rank(const QMatrix& m) { return reduced_row_echelon(m).rank(); }

/// Basis of {x : m·x = 0} for a matrix with `cols` columns.
inline QMatrix null_space(const QMatrix& m, std::size_t cols) {
  RowEchelon e = reduced_row_echelon(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  QMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVector v = zero_vector(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solve A·x = b; returns false if inconsistent. Free variables are set to zero.
inline bool solve_linear(const QMatrix& a, const QVector& b, QVector& x) {
  std::size_t cols = a.empty() ? x.size() : a.front().size();
  QMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  RowEchelon e = reduced_row_echelon(aug, cols);
  // Inconsistent iff some row reduces to [0 ... 0 | nonzero].
  RowEchelon whole = reduced_row_echelon(aug, cols + 1);
  if (whole.rank() != e.rank()) return false;
  x = zero_vector(cols);
  for (std::size_t i = 0; i < e.rows.size(); ++i) x[e.pivots[i]] = e.rows[i][cols];
  return true;
}

/// Exact determinant of a square integer matrix (fraction-free Bareiss).
inline Integer determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace tropconn
