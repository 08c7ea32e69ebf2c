#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mna {

// Dense k-mode tensor with the mode-1 index fastest (column-major layout,
// so vec() lines up with nested Kronecker products ordered last mode
// outermost). Oracle-scale only; the aligners never build one.
class DenseTensor {
 public:
  explicit DenseTensor(std::vector<int> dims);

  int modes() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t size() const { return data_.size(); }

  double operator()(std::span<const int> idx) const { return data_[offset(idx)]; }
  double& operator()(std::span<const int> idx) { return data_[offset(idx)]; }
  double operator()(std::initializer_list<int> idx) const {
    return (*this)(std::span<const int>(idx.begin(), idx.size()));
  }
  double& operator()(std::initializer_list<int> idx) {
    return (*this)(std::span<const int>(idx.begin(), idx.size()));
  }

  Eigen::Map<const Eigen::VectorXd> vec() const {
    return {data_.data(), static_cast<Eigen::Index>(data_.size())};
  }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  // Decomposes a flat position into per-mode indices (inverse of offset).
  void unravel(std::size_t pos, std::span<int> idx) const;

 private:
  std::size_t offset(std::span<const int> idx) const;

  std::vector<int> dims_;
  std::vector<double> data_;
};

}  // namespace mna
