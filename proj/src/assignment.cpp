#include "mnalign/assignment.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mna {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost) {
  if (cost.rows() != cost.cols()) {
    throw std::invalid_argument("min_cost_assignment: matrix must be square");
  }
  const int n = static_cast<int>(cost.rows());
  std::vector<int> row_to_col(n, -1);
  std::vector<int> col_to_row(n, -1);
  if (n == 0) return row_to_col;

  std::vector<double> v(n, 0.0);
  std::vector<int> free_rows;
  free_rows.reserve(n);

  // Column reduction: assign each column's cheapest row where possible.
  {
    std::vector<int> matches(n, 0);
    for (int j = n - 1; j >= 0; --j) {
      double best = cost(0, j);
      int best_row = 0;
      for (int i = 1; i < n; ++i) {
        if (cost(i, j) < best) {
          best = cost(i, j);
          best_row = i;
        }
      }
      v[j] = best;
      if (matches[best_row]++ == 0) {
        row_to_col[best_row] = j;
        col_to_row[j] = best_row;
      }
    }
    for (int i = 0; i < n; ++i) {
      if (matches[i] == 0) {
        free_rows.push_back(i);
      } else if (matches[i] == 1) {
        // Transfer reduction so the assigned column stays competitive.
        const int j1 = row_to_col[i];
        double slack = kInf;
        for (int j = 0; j < n; ++j) {
          if (j != j1) slack = std::min(slack, cost(i, j) - v[j]);
        }
        if (slack < kInf) v[j1] -= slack;
      }
    }
  }

  // Augmenting row reduction, two passes. A bounded number of local
  // reassignments resolves most free rows before the path search.
  long ops = 0;
  const long op_cap = 8L * n * n + 1024;
  for (int pass = 0; pass < 2 && !free_rows.empty(); ++pass) {
    std::vector<int> next_free;
    std::size_t idx = 0;
    while (idx < free_rows.size()) {
      const int i = free_rows[idx++];
      double umin = cost(i, 0) - v[0];
      double usub = kInf;
      int j1 = 0, j2 = -1;
      for (int j = 1; j < n; ++j) {
        const double h = cost(i, j) - v[j];
        if (h < usub) {
          if (h >= umin) {
            usub = h;
            j2 = j;
          } else {
            usub = umin;
            j2 = j1;
            umin = h;
            j1 = j;
          }
        }
      }
      int bumped = col_to_row[j1];
      if (umin < usub) {
        v[j1] -= usub - umin;
      } else if (bumped >= 0 && j2 >= 0) {
        j1 = j2;
        bumped = col_to_row[j2];
      }
      row_to_col[i] = j1;
      col_to_row[j1] = i;
      if (bumped >= 0) {
        row_to_col[bumped] = -1;
        if (umin < usub && ++ops < op_cap) {
          free_rows[--idx] = bumped;  // retry immediately
        } else {
          next_free.push_back(bumped);
        }
      }
    }
    free_rows = std::move(next_free);
  }

  // Shortest augmenting path for each remaining free row.
  std::vector<double> dist(n);
  std::vector<int> pred(n), col_order(n);
  for (const int source : free_rows) {
    for (int j = 0; j < n; ++j) {
      dist[j] = cost(source, j) - v[j];
      pred[j] = source;
      col_order[j] = j;
    }
    int low = 0, up = 0, last = 0;
    int sink = -1;
    double min_dist = 0.0;
    while (sink < 0) {
      if (low == up) {
        last = low;
        min_dist = dist[col_order[up]];
        ++up;
        for (int p = up; p < n; ++p) {
          const int j = col_order[p];
          const double h = dist[j];
          if (h <= min_dist) {
            if (h < min_dist) {
              min_dist = h;
              up = low;
            }
            col_order[p] = col_order[up];
            col_order[up++] = j;
          }
        }
        for (int p = low; p < up && sink < 0; ++p) {
          if (col_to_row[col_order[p]] < 0) sink = col_order[p];
        }
      }
      if (sink < 0) {
        const int j1 = col_order[low++];
        const int i = col_to_row[j1];
        const double off = cost(i, j1) - v[j1] - min_dist;
        for (int p = up; p < n; ++p) {
          const int j = col_order[p];
          const double alt = cost(i, j) - v[j] - off;
          if (alt < dist[j]) {
            dist[j] = alt;
            pred[j] = i;
            if (alt == min_dist) {
              if (col_to_row[j] < 0) {
                sink = j;
                break;
              }
              col_order[p] = col_order[up];
              col_order[up++] = j;
            }
          }
        }
      }
    }
    for (int p = 0; p < last; ++p) {
      const int j = col_order[p];
      v[j] += dist[j] - min_dist;
    }
    // Flip the alternating path back to the source row.
    int j = sink;
    while (true) {
      const int i = pred[j];
      col_to_row[j] = i;
      std::swap(row_to_col[i], j);
      if (i == source) break;
    }
  }

  return row_to_col;
}

std::vector<std::pair<int, int>> max_weight_assignment(
    const Eigen::MatrixXd& weights) {
  const int rows = static_cast<int>(weights.rows());
  const int cols = static_cast<int>(weights.cols());
  if (rows == 0 || cols == 0) return {};
  if (!weights.allFinite()) {
    throw std::invalid_argument("max_weight_assignment: weights must be finite");
  }

  const int n = std::max(rows, cols);
  Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(n, n);
  cost.topLeftCorner(rows, cols) = -weights;

  const std::vector<int> row_to_col = min_cost_assignment(cost);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(std::min(rows, cols));
  for (int i = 0; i < rows; ++i) {
    if (row_to_col[i] < cols) pairs.emplace_back(i, row_to_col[i]);
  }
  return pairs;
}

}  // namespace mna
