#include "mnalign/alignment.hpp"

#include <unordered_set>

namespace mna {

bool injective_per_mode(const Alignment& a) {
  for (int m = 0; m < a.modes(); ++m) {
    std::unordered_set<int> seen;
    for (int r = 0; r < a.size(); ++r) {
      if (!seen.insert(a.tuples(r, m)).second) return false;
    }
  }
  return true;
}

GroundTruth GroundTruth::identity(int k, int n) {
  GroundTruth t;
  t.to_reference.assign(k, Eigen::VectorXi::LinSpaced(n, 0, n - 1));
  return t;
}

}  // namespace mna
