#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <utility>
#include <vector>

#include "mnalign/alignment.hpp"
#include "mnalign/factors.hpp"

namespace mna {

// Data-dependent a-posteriori guarantee for the selected rank-1 matching.
// d_values(i, j) compares matching j against the per-term optimum i:
//   d_values(i, j) = (M_i . T_i) / (M_j . T_i)
// with 0/0 read as 1 and x/0 (x > 0) as +infinity. approximation_factor is
// the column-max minimized over columns; the selected matching recovers at
// least 1/approximation_factor of the optimal alignment weight.
struct BoundCertificate {
  Eigen::MatrixXd d_values;
  int selected_index = 0;
  double approximation_factor = 1.0;
};

// Optimal matching for a single rank-1 term: sort every mode's factor
// column descending (ties broken toward the smaller node id) and read
// tuples off the sorted orders. Produces min_i n_i tuples.
Alignment sort_match_rank_one(const FactorSet& f, int column);

// Total implicit tensor weight collected by an alignment's tuples.
double matching_weight(const Alignment& alignment, const FactorSet& f);

// Runs sort_match_rank_one for every column, scores each candidate against
// every rank-1 term, and returns the matching with the best certificate.
// Throws if every rank-1 term of the factor set is identically zero.
std::pair<Alignment, BoundCertificate> select_best_with_bound(
    const FactorSet& f);

// Maximum-weight bipartite matching between the rows of u and v under the
// low-rank similarity u * v^T, restricted to candidate pairs whose sorted
// positions in some factor column differ by less than b. Each candidate's
// weight is additionally scaled by 1 + (fraction of columns admitting it):
// pairs that are rank-consistent across many columns are favored over pairs
// that merely have a large product, which keeps the matching stable when
// many rows have nearly identical profiles. At b >= max(n1, n2) every pair
// is admitted by every column, the scaling is uniform, and the result is the
// exact dense maximum-weight matching. Returns (row of u, row of v) pairs
// sorted by the first component.
std::vector<std::pair<int, int>> lowrank_bipartite_match(
    const Eigen::MatrixXd& u, const Eigen::MatrixXd& v, int b);

enum class ProgressiveVariant {
  kProduct,  // fold matched modes with elementwise products only
  kMixture,  // fold with an even blend of normalized product and sum
};

// Aligns k modes by bipartite-matching two at a time: modes 0 and 1 first,
// then each further mode against the folded rows of everything matched so
// far. Rows that fall out of a stage's matching are dropped.
Alignment progressive_match(const FactorSet& f, ProgressiveVariant variant,
                            int b);

}  // namespace mna
