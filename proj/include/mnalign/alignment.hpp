#pragma once

#include <Eigen/Core>

#include <vector>

namespace mna {

// A set of k-tuples of node indices, one node per network, with no node
// reused inside a mode.
struct Alignment {
  Eigen::MatrixXi tuples;  // size() x modes(); tuples(r, m) = node of mode m

  int modes() const { return static_cast<int>(tuples.cols()); }
  int size() const { return static_cast<int>(tuples.rows()); }
};

bool injective_per_mode(const Alignment& a);

// Node-to-reference-label maps, one per mode; two nodes correspond when they
// carry the same label. Synthetic problems use the identity labeling.
struct GroundTruth {
  std::vector<Eigen::VectorXi> to_reference;

  static GroundTruth identity(int k, int n);

  int modes() const { return static_cast<int>(to_reference.size()); }
  bool correct(int mode_a, int node_a, int mode_b, int node_b) const {
    return to_reference[mode_a][node_a] == to_reference[mode_b][node_b];
  }
};

}  // namespace mna
