#include "mnalign/factors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mna {

double column_scale(double alpha, int k, int j, int iterations) {
  if (j == iterations) return std::pow(alpha, static_cast<double>(j) / k);
  return std::pow((1.0 - alpha) * std::pow(alpha, j), 1.0 / k);
}

FactorSet compute_factors(const std::vector<Graph>& graphs, double alpha,
                          int iterations,
                          const std::vector<Eigen::VectorXd>* seeds) {
  const int k = static_cast<int>(graphs.size());
  if (k < 2) throw std::invalid_argument("compute_factors: need at least 2 graphs");
  if (alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("compute_factors: alpha outside (0, 1)");
  if (iterations < 0)
    throw std::invalid_argument("compute_factors: negative iteration count");
  if (seeds && static_cast<int>(seeds->size()) != k)
    throw std::invalid_argument("compute_factors: need one seed vector per graph");

  FactorSet f;
  f.alpha = alpha;
  f.iterations = iterations;
  f.factors.reserve(k);
  f.seed_vectors.reserve(k);

  for (int i = 0; i < k; ++i) {
    const int n = graphs[i].num_nodes();
    Eigen::VectorXd u;
    if (seeds) {
      u = (*seeds)[i];
      if (u.size() != n)
        throw std::invalid_argument("compute_factors: seed " + std::to_string(i) +
                                    " has wrong length");
      if ((u.array() < 0.0).any() || std::abs(u.sum() - 1.0) > 1e-9)
        throw std::invalid_argument("compute_factors: seed " + std::to_string(i) +
                                    " is not a probability vector");
    } else {
      u = Eigen::VectorXd::Constant(n, 1.0 / n);
    }
    f.seed_vectors.push_back(u);

    Eigen::MatrixXd factor(n, iterations + 1);
    Eigen::VectorXd power = u;
    for (int j = 0; j <= iterations; ++j) {
      if (j > 0) power = stochastic_apply(graphs[i], power);
      factor.col(j) = column_scale(alpha, k, j, iterations) * power;
    }
    f.factors.push_back(std::move(factor));
  }
  return f;
}

double implicit_entry(const FactorSet& f, std::span<const int> idx) {
  const int k = f.modes();
  if (static_cast<int>(idx.size()) != k)
    throw std::out_of_range("implicit_entry: index arity mismatch");
  for (int i = 0; i < k; ++i) {
    if (idx[i] < 0 || idx[i] >= f.mode_size(i))
      throw std::out_of_range("implicit_entry: index out of range in mode " +
                              std::to_string(i));
  }
  double total = 0.0;
  for (int j = 0; j < f.rank(); ++j) {
    double prod = 1.0;
    for (int i = 0; i < k; ++i) prod *= f.factors[i](idx[i], j);
    total += prod;
  }
  return total;
}

DenseTensor dense_reconstruct(const FactorSet& f, std::size_t element_cap) {
  std::vector<int> dims(f.modes());
  std::size_t total = 1;
  for (int i = 0; i < f.modes(); ++i) {
    dims[i] = f.mode_size(i);
    total *= static_cast<std::size_t>(dims[i]);
  }
  if (total > element_cap)
    throw std::invalid_argument("dense_reconstruct: " + std::to_string(total) +
                                " elements exceed cap " + std::to_string(element_cap));

  DenseTensor t(dims);
  std::vector<double> column(total);
  for (int j = 0; j < f.rank(); ++j) {
    // Build the rank-1 term by repeated vector Kronecker expansion, mode 1
    // innermost.
    std::size_t filled = static_cast<std::size_t>(dims[0]);
    for (int a = 0; a < dims[0]; ++a) column[a] = f.factors[0](a, j);
    for (int m = 1; m < f.modes(); ++m) {
      for (int b = dims[m] - 1; b >= 0; --b) {
        const double scale = f.factors[m](b, j);
        for (std::size_t a = 0; a < filled; ++a)
          column[b * filled + a] = scale * column[a];
      }
      filled *= static_cast<std::size_t>(dims[m]);
    }
    for (std::size_t p = 0; p < total; ++p) t.data()[p] += column[p];
  }
  return t;
}

}  // namespace mna
