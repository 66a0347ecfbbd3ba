#pragma once

// Dense tableau simplex over an exact field type: maximize c.x subject to
// A x <= b, x >= 0, with b >= 0 so the all-slack basis is feasible.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "netcode/error.hpp"

namespace netcode {

template <class T>
struct SimplexResult {
  bool bounded = true;
  T objective{};
  std::vector<T> primal;  // x, one per column
  std::vector<T> dual;    // y, one per row; y >= 0, y^T A >= c, b.y = objective
  std::size_t pivots = 0;
};

/// Bland's rule on both choices: lowest-index improving column, and among
/// tied ratios the row whose basic variable has the lowest index. Terminates
/// on degenerate problems.
template <class T>
SimplexResult<T> maximize(const std::vector<std::vector<T>>& A, const std::vector<T>& b, const std::vector<T>& c) {
  const std::size_t rows = A.size();
  const std::size_t cols = c.size();
  if (b.size() != rows) throw ParameterError("simplex: row count mismatch");
  for (const auto& row : A) {
    if (row.size() != cols) throw ParameterError("simplex: ragged constraint matrix");
  }
  for (const auto& v : b) {
    if (v < T(0)) throw ParameterError("simplex: negative right-hand side");
  }

  const std::size_t width = cols + rows;  // structural then slack columns
  std::vector<std::vector<T>> tab(rows, std::vector<T>(width + 1, T(0)));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) tab[i][j] = A[i][j];
    tab[i][cols + i] = T(1);
    tab[i][width] = b[i];
  }
  // reduced[j] = c_j - c_B B^-1 A_j; reduced[width] = -objective.
  std::vector<T> reduced(width + 1, T(0));
  for (std::size_t j = 0; j < cols; ++j) reduced[j] = c[j];
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = cols + i;

  SimplexResult<T> res;
  for (;;) {
    std::optional<std::size_t> enter;
    for (std::size_t j = 0; j < width; ++j) {
      if (reduced[j] > T(0)) {
        enter = j;
        break;
      }
    }
    if (!enter) break;
    std::optional<std::size_t> leave;
    T best{};
    for (std::size_t i = 0; i < rows; ++i) {
      if (!(tab[i][*enter] > T(0))) continue;
      T ratio = tab[i][width] / tab[i][*enter];
      if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (!leave) {
      res.bounded = false;
      return res;
    }
    const auto r = *leave;
    const T pivot = tab[r][*enter];
    for (auto& v : tab[r]) v /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || tab[i][*enter] == T(0)) continue;
      const T f = tab[i][*enter];
      for (std::size_t j = 0; j <= width; ++j) tab[i][j] -= f * tab[r][j];
    }
    if (reduced[*enter] != T(0)) {
      const T f = reduced[*enter];
      for (std::size_t j = 0; j <= width; ++j) reduced[j] -= f * tab[r][j];
    }
    basis[r] = *enter;
    ++res.pivots;
  }

  res.objective = -reduced[width];
  res.primal.assign(cols, T(0));
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < cols) res.primal[basis[i]] = tab[i][width];
  }
  res.dual.assign(rows, T(0));
  for (std::size_t i = 0; i < rows; ++i) res.dual[i] = -reduced[cols + i];
  return res;
}

}  // namespace netcode
