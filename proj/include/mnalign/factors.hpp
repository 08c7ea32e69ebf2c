#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

#include "mnalign/graph.hpp"
#include "mnalign/tensor.hpp"

namespace mna {

// Per-network factor matrices U_i of shape n_i x (iterations + 1). Column j
// of U_i is column_scale(j) * P_i^j u_i, so the k-way similarity tensor is
// carried implicitly as sum_j U_1(:,j) o U_2(:,j) o ... o U_k(:,j) without
// ever being materialized. All entries are nonnegative; column j of every
// factor sums to the same scale (seed vectors are distributions and the walk
// operator preserves mass).
struct FactorSet {
  std::vector<Eigen::MatrixXd> factors;
  double alpha = 0.8;
  int iterations = 8;
  std::vector<Eigen::VectorXd> seed_vectors;

  int modes() const { return static_cast<int>(factors.size()); }
  int rank() const {
    return factors.empty() ? 0 : static_cast<int>(factors.front().cols());
  }
  int mode_size(int i) const { return static_cast<int>(factors[i].rows()); }
};

// Scale carried by column j: the damping series weight (1-alpha)*alpha^j for
// j < t split evenly over the k modes as a k-th root, and alpha^(t/k) for the
// closing column, so per-mode column products telescope back to the series.
double column_scale(double alpha, int k, int j, int iterations);

inline constexpr double kDefaultAlpha = 0.8;
inline constexpr int kDefaultIterations = 8;

// Runs the k per-network walk chains u, P u, P^2 u, ... and scales each power
// into its factor column. The implicit tensor equals the t-th fixed-point
// iterate of the damped walk on the Kronecker product of all networks, at a
// cost of t sparse matvecs per network. Default seeds are uniform 1/n_i; a
// custom seed must be a distribution of the right length.
FactorSet compute_factors(const std::vector<Graph>& graphs, double alpha,
                          int iterations,
                          const std::vector<Eigen::VectorXd>* seeds = nullptr);

// T(idx) = sum_j prod_i U_i(idx[i], j). Always >= 0.
double implicit_entry(const FactorSet& f, std::span<const int> idx);
inline double implicit_entry(const FactorSet& f, std::initializer_list<int> idx) {
  return implicit_entry(f, std::span<const int>(idx.begin(), idx.size()));
}

// Materializes the implicit tensor. Refuses sizes above element_cap; this is
// oracle and debugging support, not a pipeline step.
DenseTensor dense_reconstruct(const FactorSet& f,
                              std::size_t element_cap = 1000000);

}  // namespace mna
