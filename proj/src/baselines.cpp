#include "mnalign/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mnalign/factors.hpp"
#include "mnalign/matching.hpp"
#include "mnalign/rng.hpp"

namespace mna {

namespace {

int min_mode_size(const std::vector<Graph>& graphs) {
  int m = graphs.front().num_nodes();
  for (const Graph& g : graphs) m = std::min(m, g.num_nodes());
  return m;
}

void require_modes(const std::vector<Graph>& graphs) {
  if (graphs.size() < 2) {
    throw std::invalid_argument("baseline matching needs at least two graphs");
  }
}

}  // namespace

Alignment degree_match(const std::vector<Graph>& graphs) {
  require_modes(graphs);
  const int k = static_cast<int>(graphs.size());
  const int m = min_mode_size(graphs);

  Alignment a;
  a.tuples.resize(m, k);
  for (int i = 0; i < k; ++i) {
    const Graph& g = graphs[i];
    std::vector<int> order(g.num_nodes());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&g](int x, int y) {
      if (g.degree(x) != g.degree(y)) return g.degree(x) > g.degree(y);
      return x < y;
    });
    for (int r = 0; r < m; ++r) a.tuples(r, i) = order[r];
  }
  return a;
}

Alignment random_match(const std::vector<Graph>& graphs, std::uint64_t seed) {
  require_modes(graphs);
  const int k = static_cast<int>(graphs.size());
  const int m = min_mode_size(graphs);

  Rng rng(seed);
  Alignment a;
  a.tuples.resize(m, k);
  for (int i = 0; i < k; ++i) {
    std::vector<int> perm(graphs[i].num_nodes());
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    for (int r = 0; r < m; ++r) a.tuples(r, i) = perm[r];
  }
  return a;
}

Alignment pairwise_consistent_match(const std::vector<Graph>& graphs,
                                    double alpha, int iterations, int b) {
  require_modes(graphs);
  const int k = static_cast<int>(graphs.size());

  // forward[i][j][v]: partner of node v of graph i in graph j, -1 if
  // unmatched. Only filled for i < j.
  std::vector<std::vector<std::vector<int>>> forward(
      k, std::vector<std::vector<int>>(k));
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const FactorSet f =
          compute_factors({graphs[i], graphs[j]}, alpha, iterations);
      const auto pairs = lowrank_bipartite_match(f.factors[0], f.factors[1], b);
      std::vector<int> map(graphs[i].num_nodes(), -1);
      for (const auto& [x, y] : pairs) map[x] = y;
      forward[i][j] = std::move(map);
    }
  }

  std::vector<std::vector<int>> kept;
  std::vector<int> tuple(k);
  for (int v = 0; v < graphs[0].num_nodes(); ++v) {
    tuple[0] = v;
    bool complete = true;
    for (int j = 1; j < k && complete; ++j) {
      tuple[j] = forward[0][j][v];
      complete = tuple[j] >= 0;
    }
    for (int i = 1; i < k && complete; ++i) {
      for (int j = i + 1; j < k && complete; ++j) {
        complete = forward[i][j][tuple[i]] == tuple[j];
      }
    }
    if (complete) kept.push_back(tuple);
  }

  Alignment a;
  a.tuples.resize(static_cast<int>(kept.size()), k);
  for (int r = 0; r < static_cast<int>(kept.size()); ++r) {
    for (int j = 0; j < k; ++j) a.tuples(r, j) = kept[r][j];
  }
  return a;
}

}  // namespace mna
