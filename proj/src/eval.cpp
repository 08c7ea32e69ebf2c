#include "mnalign/eval.hpp"

#include <cstdint>
#include <stdexcept>

namespace mna {

namespace {

void require_shape(const Alignment& alignment,
                   const std::vector<Graph>& graphs) {
  const int k = static_cast<int>(graphs.size());
  if (k < 2) throw std::invalid_argument("metrics need at least two graphs");
  if (alignment.size() > 0 && alignment.modes() != k) {
    throw std::invalid_argument("alignment mode count does not match graphs");
  }
  for (int r = 0; r < alignment.size(); ++r) {
    for (int i = 0; i < k; ++i) {
      const int v = alignment.tuples(r, i);
      if (v < 0 || v >= graphs[i].num_nodes()) {
        throw std::out_of_range("alignment references a node out of range");
      }
    }
  }
}

}  // namespace

double degree_weighted_recovery(const Alignment& alignment,
                                const GroundTruth& truth,
                                const std::vector<Graph>& graphs) {
  require_shape(alignment, graphs);
  const int k = static_cast<int>(graphs.size());
  if (truth.modes() != k) {
    throw std::invalid_argument("ground truth mode count does not match");
  }
  for (const Graph& g : graphs) {
    if (g.degree_sum() == 0) {
      throw std::invalid_argument(
          "degree_weighted_recovery: graph without edges");
    }
  }

  // Per mode pair, numerator and denominator are integer degree sums, so a
  // perfect alignment of identical graphs scores exactly 1.
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      std::int64_t num = 0;
      for (int r = 0; r < alignment.size(); ++r) {
        const int vi = alignment.tuples(r, i);
        const int vj = alignment.tuples(r, j);
        if (truth.correct(i, vi, j, vj)) {
          num += graphs[i].degree(vi) + graphs[j].degree(vj);
        }
      }
      total += static_cast<double>(num) /
               static_cast<double>(graphs[i].degree_sum() + graphs[j].degree_sum());
    }
  }
  return total / (static_cast<double>(k) * (k - 1) / 2.0);
}

double normalized_overlap(const Alignment& alignment,
                          const std::vector<Graph>& graphs) {
  require_shape(alignment, graphs);
  const int k = static_cast<int>(graphs.size());

  std::int64_t max_nnz = 0;
  for (const Graph& g : graphs) {
    max_nnz = std::max<std::int64_t>(max_nnz, 2LL * g.num_edges());
  }
  if (max_nnz == 0) return 0.0;

  std::vector<int> row_of(graphs[0].num_nodes(), -1);
  for (int r = 0; r < alignment.size(); ++r) row_of[alignment.tuples(r, 0)] = r;

  std::int64_t conserved = 0;
  for (const auto& [x, y] : graphs[0].edges()) {
    const int rx = row_of[x];
    const int ry = row_of[y];
    if (rx < 0 || ry < 0) continue;
    bool in_all = true;
    for (int i = 1; i < k && in_all; ++i) {
      in_all = graphs[i].has_edge(alignment.tuples(rx, i),
                                  alignment.tuples(ry, i));
    }
    if (in_all) ++conserved;
  }
  return static_cast<double>(2 * conserved) / static_cast<double>(max_nnz);
}

}  // namespace mna
