#include "mnalign/synth.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "mnalign/rng.hpp"

namespace mna {

Graph gen_erdos_renyi(int n, double avg_degree, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_erdos_renyi: need n >= 2");
  if (avg_degree <= 0.0 || avg_degree > n - 1)
    throw std::invalid_argument("gen_erdos_renyi: avg_degree out of (0, n-1]");
  const double p = avg_degree / (n - 1);
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(p * n * (n - 1) / 2 * 1.2) + 16);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(edges));
}

Graph gen_pref_attach(int n, int theta, std::uint64_t seed) {
  if (n < 5) throw std::invalid_argument("gen_pref_attach: need n >= 5");
  if (theta < 1 || theta > 5)
    throw std::invalid_argument("gen_pref_attach: theta outside [1, 5]");
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  std::vector<double> degree(n, 0.0);
  for (int u = 0; u < 5; ++u) {
    for (int v = u + 1; v < 5; ++v) edges.emplace_back(u, v);
    degree[u] = 4.0;
  }
  std::vector<int> picked;
  picked.reserve(theta);
  for (int v = 5; v < n; ++v) {
    // Degree snapshot: weights do not change while v picks its theta targets.
    picked.clear();
    double total = std::accumulate(degree.begin(), degree.begin() + v, 0.0);
    for (int e = 0; e < theta; ++e) {
      double r = rng.uniform() * total;
      int chosen = -1;
      for (int u = 0; u < v; ++u) {
        bool used = false;
        for (int p : picked) used |= (p == u);
        if (used) continue;
        if (r < degree[u]) {
          chosen = u;
          break;
        }
        r -= degree[u];
      }
      if (chosen < 0) {
        // Rounding slack: fall back to the last unpicked vertex.
        for (int u = v - 1; u >= 0; --u) {
          bool used = false;
          for (int p : picked) used |= (p == u);
          if (!used) {
            chosen = u;
            break;
          }
        }
      }
      picked.push_back(chosen);
      total -= degree[chosen];
      edges.emplace_back(chosen, v);
    }
    for (int p : picked) degree[p] += 1.0;
    degree[v] = theta;
  }
  return Graph(n, std::move(edges));
}

ProblemInstance perturb(const Graph& reference, int k, double p_e,
                        std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("perturb: need k >= 2");
  if (p_e < 0.0 || p_e > 1.0)
    throw std::invalid_argument("perturb: p_e outside [0, 1]");
  ProblemInstance prob;
  prob.reference = reference;
  prob.seed = seed;
  prob.edge_deletion_prob = p_e;
  prob.ground_truth = GroundTruth::identity(k, reference.num_nodes());
  prob.instances.reserve(k);
  Rng rng(seed);
  for (int i = 0; i < k; ++i) {
    std::vector<std::pair<int, int>> kept;
    kept.reserve(reference.edges().size());
    for (const auto& e : reference.edges()) {
      if (!rng.bernoulli(p_e)) kept.push_back(e);
    }
    prob.instances.emplace_back(reference.num_nodes(), std::move(kept));
  }
  return prob;
}

}  // namespace mna
