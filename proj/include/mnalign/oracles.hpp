#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

#include "mnalign/factors.hpp"
#include "mnalign/graph.hpp"
#include "mnalign/rng.hpp"
#include "mnalign/tensor.hpp"

namespace mna::oracle {

// Independent reference implementations used to cross-check the fast paths.
// Everything here is deliberately dense and brute-force.

// Column-stochastic walk matrix built entrywise (degree-0 columns uniform).
Eigen::MatrixXd dense_walk_matrix(const Graph& g);

// t explicit iterations of y <- alpha * (P_k kron ... kron P_1) y
// + (1 - alpha) * h on the densely built Kronecker system, starting at h.
Eigen::VectorXd kron_fixed_point(const std::vector<Graph>& graphs, double alpha,
                                 int iterations,
                                 const std::vector<Eigen::VectorXd>& seeds);

// Exact optimum of the k-dimensional matching problem on a dense tensor by
// enumerating per-mode injections. Only feasible for tiny dims.
double exhaustive_matching_weight(const DenseTensor& t);

// Exact maximum-weight assignment by enumerating permutations (n <= ~8).
double exhaustive_assignment_weight(const Eigen::MatrixXd& w);

// Kuhn-Munkres maximum-weight assignment, written independently of the
// production solver. Returns row -> col (-1 for rows left unassigned when
// rows > cols) and the achieved weight.
std::vector<int> hungarian_max_assignment(const Eigen::MatrixXd& w);
double hungarian_max_weight(const Eigen::MatrixXd& w);

// Random FactorSet with entries in [0, 1); a slice of cases gets sparsified
// entries and occasional all-zero columns to exercise the zero rules.
FactorSet random_factor_set(int k, int max_n, int max_rank, Rng& rng);

struct CheckResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  double worst = 0.0;  // largest error/violation observed
  std::string detail;
  bool pass() const { return failures == 0; }
};

struct VerifyCaps {
  int max_n = 4;
  int max_k = 3;
  int max_t = 4;
  int cases = 200;
  std::uint64_t seed = 7;
};

CheckResult check_dense_equivalence(const VerifyCaps& caps);
CheckResult check_rearrangement(const VerifyCaps& caps);
CheckResult check_certificate_soundness(const VerifyCaps& caps);
CheckResult check_bipartite_exactness(const VerifyCaps& caps);
std::vector<CheckResult> run_all_checks(const VerifyCaps& caps);

}  // namespace mna::oracle
