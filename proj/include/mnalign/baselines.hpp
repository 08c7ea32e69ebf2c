#pragma once

#include <cstdint>
#include <vector>

#include "mnalign/alignment.hpp"
#include "mnalign/graph.hpp"

namespace mna {

// Aligns nodes by degree rank per graph (ties toward the smaller id).
Alignment degree_match(const std::vector<Graph>& graphs);

// Aligns independent uniform node permutations, one per graph.
Alignment random_match(const std::vector<Graph>& graphs, std::uint64_t seed);

// Runs the two-network low-rank pipeline on every graph pair and keeps only
// tuples that are pairwise consistent across all k(k-1)/2 matchings.
Alignment pairwise_consistent_match(const std::vector<Graph>& graphs,
                                    double alpha, int iterations, int b);

}  // namespace mna
