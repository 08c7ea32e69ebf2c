#pragma once

#include <Eigen/Core>

#include <utility>
#include <vector>

namespace mna {

// Exact minimum-cost perfect assignment on a square cost matrix
// (Jonker-Volgenant: column reduction, augmenting row reduction, then
// shortest augmenting paths). Returns the column assigned to each row.
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost);

// Exact maximum-weight assignment on a rectangular nonnegative weight
// matrix. Pads to square with zero weight, so every row (or column) of the
// smaller side is paired. Returns (row, col) pairs sorted by row.
std::vector<std::pair<int, int>> max_weight_assignment(
    const Eigen::MatrixXd& weights);

}  // namespace mna
