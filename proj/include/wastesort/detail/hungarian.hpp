#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace wastesort::detail {

// Minimum-cost assignment of every row to a distinct column for a dense
// rows x cols cost matrix (row-major) with rows <= cols. Shortest augmenting
// path with dual potentials, O(rows^2 * cols). Returns the column of each row.
template <typename T>
std::vector<std::size_t> hungarian_rectangular(const std::vector<T>& cost, std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> assignment(rows, 0);
  if (rows == 0) return assignment;

  const T inf = std::numeric_limits<T>::infinity();
  // 1-based rows/columns; column 0 is a virtual source.
  std::vector<T> u(rows + 1, T{0}), v(cols + 1, T{0});
  std::vector<std::size_t> row_of_col(cols + 1, 0), way(cols + 1, 0);

  for (std::size_t i = 1; i <= rows; ++i) {
    row_of_col[0] = i;
    std::size_t j0 = 0;
    std::vector<T> min_slack(cols + 1, inf);
    std::vector<char> used(cols + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of_col[j0];
      T delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const T reduced = cost[(i0 - 1) * cols + (j - 1)] - u[i0] - v[j];
        if (reduced < min_slack[j]) {
          min_slack[j] = reduced;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= cols; ++j) {
    if (row_of_col[j] != 0) assignment[row_of_col[j] - 1] = j - 1;
  }
  return assignment;
}

}  // namespace wastesort::detail
