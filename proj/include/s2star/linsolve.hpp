#pragma once

#include <optional>
#include <vector>

#include "s2star/scalar.hpp"

namespace s2star {

using SVec = std::vector<Scalar>;
using SMat = std::vector<SVec>;

struct LinearSolution {
  bool solvable = false;
  SVec particular;
  /// Basis of the homogeneous solution space.
  std::vector<SVec> nullspace;
};

/// Exact Gaussian elimination over K = Q(i)(h). A is m x n (rows x cols),
/// b has length m. Returns a particular solution and the nullspace.
inline LinearSolution solve_linear(SMat A, SVec b) {
  std::size_t m = A.size();
  std::size_t n = m ? A[0].size() : 0;
  std::vector<long> pivot_col_of_row(m, -1);
  std::vector<long> pivot_row_of_col(n, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t sel = row;
    while (sel < m && A[sel][col].is_zero())
      ++sel;
    if (sel == m)
      continue;
    std::swap(A[sel], A[row]);
    std::swap(b[sel], b[row]);
    Scalar inv = A[row][col].inverse();
    for (std::size_t j = col; j < n; ++j)
      A[row][j] *= inv;
    b[row] *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || A[r][col].is_zero())
        continue;
      Scalar f = A[r][col];
      for (std::size_t j = col; j < n; ++j)
        A[r][j] -= f * A[row][j];
      b[r] -= f * b[row];
    }
    pivot_col_of_row[row] = static_cast<long>(col);
    pivot_row_of_col[col] = static_cast<long>(row);
    ++row;
  }
  LinearSolution sol;
  for (std::size_t r = row; r < m; ++r)
    if (!b[r].is_zero())
      return sol; // inconsistent
  sol.solvable = true;
  sol.particular.assign(n, Scalar::zero());
  for (std::size_t r = 0; r < row; ++r)
    sol.particular[static_cast<std::size_t>(pivot_col_of_row[r])] = b[r];
  for (std::size_t col = 0; col < n; ++col) {
    if (pivot_row_of_col[col] >= 0)
      continue;
    SVec v(n, Scalar::zero());
    v[col] = Scalar::one();
    for (std::size_t c2 = 0; c2 < n; ++c2) {
      long pr = pivot_row_of_col[c2];
      if (pr >= 0)
        v[c2] = -A[static_cast<std::size_t>(pr)][col];
    }
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

/// Exact matrix inverse over K, if it exists.
inline std::optional<SMat> invert_matrix(const SMat &A) {
  std::size_t n = A.size();
  SMat aug = A;
  SMat inv(n, SVec(n, Scalar::zero()));
  for (std::size_t i = 0; i < n; ++i)
    inv[i][i] = Scalar::one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && aug[sel][col].is_zero())
      ++sel;
    if (sel == n)
      return std::nullopt;
    std::swap(aug[sel], aug[col]);
    std::swap(inv[sel], inv[col]);
    Scalar f = aug[col][col].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      aug[col][j] *= f;
      inv[col][j] *= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || aug[r][col].is_zero())
        continue;
      Scalar g = aug[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        aug[r][j] -= g * aug[col][j];
        inv[r][j] -= g * inv[col][j];
      }
    }
  }
  return inv;
}

} // namespace s2star
