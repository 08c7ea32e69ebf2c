#include "mnalign/tensor.hpp"

#include <stdexcept>
#include <string>

namespace mna {

DenseTensor::DenseTensor(std::vector<int> dims) : dims_(std::move(dims)) {
  std::size_t total = 1;
  for (int d : dims_) {
    if (d <= 0) throw std::invalid_argument("DenseTensor: nonpositive dimension");
    total *= static_cast<std::size_t>(d);
  }
  data_.assign(total, 0.0);
}

std::size_t DenseTensor::offset(std::span<const int> idx) const {
  if (idx.size() != dims_.size())
    throw std::out_of_range("DenseTensor: index arity mismatch");
  std::size_t pos = 0;
  for (int m = modes() - 1; m >= 0; --m) {
    const int i = idx[m];
    if (i < 0 || i >= dims_[m])
      throw std::out_of_range("DenseTensor: index " + std::to_string(i) +
                              " out of range for mode " + std::to_string(m));
    pos = pos * dims_[m] + static_cast<std::size_t>(i);
  }
  return pos;
}

void DenseTensor::unravel(std::size_t pos, std::span<int> idx) const {
  for (int m = 0; m < modes(); ++m) {
    idx[m] = static_cast<int>(pos % dims_[m]);
    pos /= dims_[m];
  }
}

}  // namespace mna
