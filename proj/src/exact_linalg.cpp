#include "ksub/exact_linalg.hpp"

#include <algorithm>
#include <cstddef>

namespace ksub {

namespace {

// Row echelon by exact elimination; returns pivot (row, col) pairs. Pivot
// columns are restricted to the first `pivot_cols` (rows are still reduced
// across their full width, so augmented columns come out right).
std::vector<std::pair<std::size_t, std::size_t>> eliminate(
    Matrix& a, std::size_t pivot_cols = static_cast<std::size_t>(-1)) {
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size();
  const std::size_t cols = std::min(a[0].size(), pivot_cols);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[r], a[pivot]);
    const std::size_t width = a[r].size();
    const Rational inv = Rational(1) / a[r][c];
    for (std::size_t j = c; j < width; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational factor = a[i][c];
      for (std::size_t j = c; j < width; ++j) a[i][j] -= factor * a[r][j];
    }
    pivots.emplace_back(r, c);
    ++r;
  }
  return pivots;
}

}  // namespace

int matrix_rank(Matrix a) { return static_cast<int>(eliminate(a).size()); }

std::optional<std::vector<Rational>> solve_unique(Matrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) return std::nullopt;
    a[i].push_back(b[i]);
  }
  const auto pivots = eliminate(a, n);
  if (pivots.size() != n) return std::nullopt;
  std::vector<Rational> x(n);
  for (const auto& [row, col] : pivots) x[col] = a[row][n];
  return x;
}

std::optional<std::vector<Rational>> nullspace_vector(Matrix a) {
  if (a.empty()) return std::nullopt;
  const std::size_t cols = a[0].size();
  const auto pivots = eliminate(a);
  if (pivots.size() == cols) return std::nullopt;
  std::vector<bool> is_pivot(cols, false);
  for (const auto& [row, col] : pivots) is_pivot[col] = true;
  std::size_t free_col = 0;
  while (free_col < cols && is_pivot[free_col]) ++free_col;
  std::vector<Rational> x(cols, Rational(0));
  x[free_col] = 1;
  for (const auto& [row, col] : pivots) x[col] = -a[row][free_col];
  return x;
}

std::vector<std::size_t> independent_rows(const Matrix& a) {
  std::vector<std::size_t> chosen;
  Matrix basis;
  int rank = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    basis.push_back(a[i]);
    Matrix copy = basis;
    const int r = matrix_rank(std::move(copy));
    if (r > rank) {
      rank = r;
      chosen.push_back(i);
    } else {
      basis.pop_back();
    }
  }
  return chosen;
}

}  // namespace ksub
