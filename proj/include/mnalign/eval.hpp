#pragma once

#include <optional>
#include <vector>

#include "mnalign/alignment.hpp"
#include "mnalign/graph.hpp"

namespace mna {

// Everything a single alignment run reports. d_bound is only present for
// methods that produce an approximation certificate, recovery only when
// ground truth is known.
struct MetricsReport {
  std::optional<double> recovery;
  double overlap = 0.0;
  int aligned_tuples = 0;
  double objective_weight = 0.0;
  std::optional<double> d_bound;
  double runtime_seconds = 0.0;
};

// Fraction of correctly aligned node pairs, weighted by degree so hubs count
// more, averaged over the k(k-1)/2 mode pairs. Equals 1 exactly when every
// tuple is correct and all nodes are covered. Throws if any graph has no
// edges.
double degree_weighted_recovery(const Alignment& alignment,
                                const GroundTruth& truth,
                                const std::vector<Graph>& graphs);

// Edges conserved across all k graphs under the alignment, as a fraction of
// the largest graph's edge count (both sides measured as symmetric nonzeros).
double normalized_overlap(const Alignment& alignment,
                          const std::vector<Graph>& graphs);

}  // namespace mna
