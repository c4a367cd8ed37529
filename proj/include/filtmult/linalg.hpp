#pragma once

// Gaussian elimination over an exact field (Rational, QuadExt or Scalar).

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "filtmult/numeric.hpp"

namespace filtmult {

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const QuadExt& x) { return x.sign() == 0; }
inline bool is_zero(const Scalar& x) { return x.sign() == 0; }

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Unique solution of A x = b for square A, or nothing when A is singular.
template <class T>
std::optional<std::vector<T>> solve_linear(Matrix<T> a, std::vector<T> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && is_zero(a[pivot][col])) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    T inv = T(1) / a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] = a[col][j] * inv;
    b[col] = b[col] * inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || is_zero(a[row][col])) continue;
      T factor = a[row][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] = a[row][j] - factor * a[col][j];
      b[row] = b[row] - factor * b[col];
    }
  }
  return b;
}

/// Inverse of a square matrix, or nothing when singular.
template <class T>
std::optional<Matrix<T>> invert(const Matrix<T>& a) {
  const std::size_t n = a.size();
  Matrix<T> out(n, std::vector<T>(n));
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<T> unit(n, T(0));
    unit[k] = T(1);
    auto col = solve_linear(a, unit);
    if (!col) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) out[i][k] = (*col)[i];
  }
  return out;
}

template <class T>
std::size_t matrix_rank(Matrix<T> a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size();
  const std::size_t cols = a[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && is_zero(a[pivot][col])) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t row = rank + 1; row < rows; ++row) {
      if (is_zero(a[row][col])) continue;
      T factor = a[row][col] / a[rank][col];
      for (std::size_t j = col; j < cols; ++j) a[row][j] = a[row][j] - factor * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// Determinant by elimination.
template <class T>
T determinant(Matrix<T> a) {
  const std::size_t n = a.size();
  T det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && is_zero(a[pivot][col])) ++pivot;
    if (pivot == n) return T(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det = det * a[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (is_zero(a[row][col])) continue;
      T factor = a[row][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] = a[row][j] - factor * a[col][j];
    }
  }
  return det;
}

}  // namespace filtmult
