#pragma once

#include <cstdint>
#include <vector>

#include "mnalign/alignment.hpp"
#include "mnalign/graph.hpp"

namespace mna {

// A reference graph plus k noisy copies of it; the true correspondence is
// the identity on node ids. Every instance's edge set is a subset of the
// reference edges.
struct ProblemInstance {
  Graph reference;
  std::vector<Graph> instances;
  GroundTruth ground_truth;
  std::uint64_t seed = 0;
  double edge_deletion_prob = 0.0;
};

// Each of the C(n,2) pairs is an edge independently with probability
// avg_degree / (n - 1). Requires n >= 2 and 0 < avg_degree < n - 1... the
// upper bound is inclusive: avg_degree = n - 1 forces the complete graph.
Graph gen_erdos_renyi(int n, double avg_degree, std::uint64_t seed);

// Preferential attachment: start from a 5-clique, then each new vertex
// attaches theta edges to distinct existing vertices, chosen proportionally
// to their degree before the new vertex arrives. Requires n >= 5 and
// 1 <= theta <= 5. Expected average degree approaches 2 * theta.
Graph gen_pref_attach(int n, int theta, std::uint64_t seed);

// k independent copies of the reference where each edge survives with
// probability 1 - p_e, independently across edges and copies.
ProblemInstance perturb(const Graph& reference, int k, double p_e,
                        std::uint64_t seed);

}  // namespace mna
