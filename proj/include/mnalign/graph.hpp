#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

namespace mna {

// Simple undirected graph with 0-indexed nodes, immutable once built.
// Edges are stored canonically (u < v, sorted, unique) next to sorted
// adjacency lists, so it doubles as the sparse operator for walk products.
class Graph {
 public:
  Graph() = default;

  // Accepts any endpoint list; orientation is normalized and duplicates
  // collapse. Throws on self-loops or endpoints outside [0, num_nodes).
  Graph(int num_nodes, std::vector<std::pair<int, int>> edge_list);

  int num_nodes() const { return num_nodes_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  std::int64_t degree_sum() const { return 2LL * num_edges(); }
  bool has_edge(int u, int v) const;

 private:
  int num_nodes_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

struct EdgeListStats {
  int self_loops_dropped = 0;
  int duplicate_lines = 0;
};

// Reads a "u v" per-line edge list; lines starting with '#' are comments.
// Node count is 1 + max id unless num_nodes overrides it. Self-loop lines
// are dropped (counted in stats); duplicate and reversed-duplicate lines
// collapse to one edge. Throws on malformed lines (with the line number),
// unreadable paths, and files with no edge lines at all.
Graph load_edge_list(const std::filesystem::path& path,
                     std::optional<int> num_nodes = std::nullopt,
                     EdgeListStats* stats = nullptr);

void save_edge_list(const Graph& g, const std::filesystem::path& path);

// y = P x for the column-stochastic walk operator P of g: column v spreads
// x[v] uniformly over the neighbors of v, or uniformly over all nodes when
// v is isolated. Computed straight off the adjacency lists; P is never
// materialized.
Eigen::VectorXd stochastic_apply(const Graph& g,
                                 const Eigen::Ref<const Eigen::VectorXd>& x);

}  // namespace mna
