#include "mnalign/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mna {

Graph::Graph(int num_nodes, std::vector<std::pair<int, int>> edge_list)
    : num_nodes_(num_nodes) {
  if (num_nodes < 0) throw std::invalid_argument("graph: negative node count");
  for (auto& [u, v] : edge_list) {
    if (u == v) throw std::invalid_argument("graph: self-loop " + std::to_string(u));
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes)
      throw std::invalid_argument("graph: endpoint out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edge_list.begin(), edge_list.end());
  edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());
  edges_ = std::move(edge_list);

  adjacency_.assign(num_nodes_, {});
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= num_nodes_ || v >= num_nodes_) return false;
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

namespace {

bool parse_node_id(const std::string& token, int& out) {
  if (token.empty()) return false;
  for (char c : token) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  try {
    out = std::stoi(token);
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace

Graph load_edge_list(const std::filesystem::path& path,
                     std::optional<int> num_nodes, EdgeListStats* stats) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path.string());

  std::vector<std::pair<int, int>> raw;
  EdgeListStats local;
  std::string line;
  int line_no = 0;
  int max_id = -1;
  int edge_lines = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;  // blank
    if (a[0] == '#') continue;
    ++edge_lines;
    int u = 0, v = 0;
    if (!(ls >> b) || (ls >> extra) || !parse_node_id(a, u) || !parse_node_id(b, v)) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": malformed edge line '" + line + "'");
    }
    if (u == v) {
      ++local.self_loops_dropped;
      max_id = std::max(max_id, u);
      continue;
    }
    max_id = std::max({max_id, u, v});
    raw.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (edge_lines == 0)
    throw std::runtime_error("edge list is empty: " + path.string());

  const std::size_t before = raw.size();
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  local.duplicate_lines = static_cast<int>(before - raw.size());

  int n = max_id + 1;
  if (num_nodes) {
    if (*num_nodes < n)
      throw std::runtime_error("node count override " + std::to_string(*num_nodes) +
                               " below 1 + max id " + std::to_string(n));
    n = *num_nodes;
  }
  if (stats) *stats = local;
  return Graph(n, std::move(raw));
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write edge list: " + path.string());
  out << "# nodes " << g.num_nodes() << "\n";
  for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Eigen::VectorXd stochastic_apply(const Graph& g,
                                 const Eigen::Ref<const Eigen::VectorXd>& x) {
  const int n = g.num_nodes();
  if (x.size() != n)
    throw std::invalid_argument("stochastic_apply: vector length " +
                                std::to_string(x.size()) + " != node count " +
                                std::to_string(n));
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  double dangling_mass = 0.0;
  for (int v = 0; v < n; ++v) {
    const int deg = g.degree(v);
    if (deg == 0) {
      dangling_mass += x[v];
      continue;
    }
    const double share = x[v] / deg;
    for (int u : g.neighbors(v)) y[u] += share;
  }
  if (dangling_mass != 0.0) y.array() += dangling_mass / n;
  return y;
}

}  // namespace mna
