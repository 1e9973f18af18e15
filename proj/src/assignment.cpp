#include "rolecluster/assignment.hpp"

#include <limits>
#include <vector>

namespace rolecluster {

namespace {

// Min-cost assignment of every row to a distinct column (rows <= cols),
// shortest-augmenting-path with potentials, O(rows^2 * cols).
// Returns per-row column indices (1-based internals).
std::vector<int> min_cost_assignment(const Matrix& cost) {
  const int n = static_cast<int>(cost.rows());
  const int m = static_cast<int>(cost.cols());
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = inf;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

std::vector<int> max_weight_assignment(const Matrix& weights) {
  const int rows = static_cast<int>(weights.rows());
  const int cols = static_cast<int>(weights.cols());
  if (rows == 0 || cols == 0) {
    return std::vector<int>(rows, -1);
  }

  std::vector<int> result(rows, -1);
  if (rows <= cols) {
    result = min_cost_assignment(-weights);
  } else {
    const std::vector<int> col_to_row = min_cost_assignment(Matrix(-weights.transpose()));
    for (int j = 0; j < cols; ++j) {
      if (col_to_row[j] >= 0) result[col_to_row[j]] = j;
    }
  }
  for (int i = 0; i < rows; ++i) {
    if (result[i] >= 0 && !(weights(i, result[i]) > 0.0)) {
      result[i] = -1;  // matched only to fill the assignment; no real overlap
    }
  }
  return result;
}

}  // namespace rolecluster
