#include "mnalign/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mnalign/assignment.hpp"

namespace mna {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<int> descending_order(const Eigen::Ref<const Eigen::VectorXd>& x) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&x](int a, int b) {
    if (x[a] != x[b]) return x[a] > x[b];
    return a < b;
  });
  return order;
}

// log(sum exp(x)) with the empty/all -inf case mapping to -inf.
double log_sum_exp(const std::vector<double>& x) {
  double peak = kNegInf;
  for (double v : x) peak = std::max(peak, v);
  if (peak == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double v : x) acc += std::exp(v - peak);
  return peak + std::log(acc);
}

// Weight of `a` on the rank-1 term `column`, in plain and log arithmetic.
// The log value survives products that underflow to zero at large k.
std::pair<double, double> term_weight(const Alignment& a, const FactorSet& f,
                                      const std::vector<Eigen::MatrixXd>& logs,
                                      int column) {
  const int k = a.modes();
  double plain = 0.0;
  std::vector<double> row_logs(a.size());
  for (int r = 0; r < a.size(); ++r) {
    double prod = 1.0;
    double lg = 0.0;
    for (int m = 0; m < k; ++m) {
      const int node = a.tuples(r, m);
      prod *= f.factors[m](node, column);
      lg += logs[m](node, column);
    }
    plain += prod;
    row_logs[r] = lg;
  }
  return {plain, log_sum_exp(row_logs)};
}

double ratio_with_zero_rules(double num_plain, double num_log,
                             double den_plain, double den_log) {
  if (den_plain > 0.0) return num_plain / den_plain;
  if (den_log > kNegInf) return std::exp(num_log - den_log);
  // Denominator is exactly zero: 0/0 counts as 1, x/0 as unbounded.
  if (num_log == kNegInf) return 1.0;
  return std::numeric_limits<double>::infinity();
}

void require_same_rank(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
  if (u.cols() != v.cols()) {
    throw std::invalid_argument(
        "lowrank_bipartite_match: factor column counts differ");
  }
}

void normalize_rows_in_place(Eigen::MatrixXd& m) {
  const double total = m.sum();
  if (total > 0.0) m /= total;
}

}  // namespace

Alignment sort_match_rank_one(const FactorSet& f, int column) {
  if (column < 0 || column >= f.rank()) {
    throw std::out_of_range("sort_match_rank_one: column out of range");
  }
  const int k = f.modes();
  int m = f.mode_size(0);
  for (int i = 1; i < k; ++i) m = std::min(m, f.mode_size(i));

  Alignment a;
  a.tuples.resize(m, k);
  for (int i = 0; i < k; ++i) {
    const std::vector<int> order = descending_order(f.factors[i].col(column));
    for (int r = 0; r < m; ++r) a.tuples(r, i) = order[r];
  }
  return a;
}

double matching_weight(const Alignment& alignment, const FactorSet& f) {
  if (alignment.size() > 0 && alignment.modes() != f.modes()) {
    throw std::invalid_argument("matching_weight: mode count mismatch");
  }
  double total = 0.0;
  std::vector<int> idx(f.modes());
  for (int r = 0; r < alignment.size(); ++r) {
    for (int m = 0; m < f.modes(); ++m) idx[m] = alignment.tuples(r, m);
    total += implicit_entry(f, idx);
  }
  return total;
}

std::pair<Alignment, BoundCertificate> select_best_with_bound(
    const FactorSet& f) {
  const int rank = f.rank();
  const int k = f.modes();

  bool any_term_nonzero = false;
  for (int j = 0; j < rank && !any_term_nonzero; ++j) {
    bool nonzero = true;
    for (int m = 0; m < k; ++m) {
      if (f.factors[m].col(j).maxCoeff() <= 0.0) {
        nonzero = false;
        break;
      }
    }
    any_term_nonzero = nonzero;
  }
  if (!any_term_nonzero) {
    throw std::runtime_error(
        "select_best_with_bound: every rank-1 term is identically zero");
  }

  std::vector<Eigen::MatrixXd> logs;
  logs.reserve(k);
  for (const Eigen::MatrixXd& u : f.factors) logs.push_back(u.array().log().matrix());

  std::vector<Alignment> candidates;
  candidates.reserve(rank);
  for (int j = 0; j < rank; ++j) candidates.push_back(sort_match_rank_one(f, j));

  // weight(i, j): candidate j evaluated on rank-1 term i.
  Eigen::MatrixXd plain(rank, rank), logged(rank, rank);
  for (int j = 0; j < rank; ++j) {
    for (int i = 0; i < rank; ++i) {
      const auto [p, l] = term_weight(candidates[j], f, logs, i);
      plain(i, j) = p;
      logged(i, j) = l;
    }
  }

  BoundCertificate cert;
  cert.d_values.resize(rank, rank);
  for (int j = 0; j < rank; ++j) {
    for (int i = 0; i < rank; ++i) {
      cert.d_values(i, j) = ratio_with_zero_rules(plain(i, i), logged(i, i),
                                                  plain(i, j), logged(i, j));
    }
  }

  cert.selected_index = 0;
  cert.approximation_factor = cert.d_values.col(0).maxCoeff();
  for (int j = 1; j < rank; ++j) {
    const double dj = cert.d_values.col(j).maxCoeff();
    if (dj < cert.approximation_factor) {
      cert.approximation_factor = dj;
      cert.selected_index = j;
    }
  }
  return {candidates[cert.selected_index], cert};
}

std::vector<std::pair<int, int>> lowrank_bipartite_match(
    const Eigen::MatrixXd& u, const Eigen::MatrixXd& v, int b) {
  require_same_rank(u, v);
  if (b < 1) {
    throw std::invalid_argument("lowrank_bipartite_match: b must be >= 1");
  }
  const int n1 = static_cast<int>(u.rows());
  const int n2 = static_cast<int>(v.rows());
  const int m = std::min(n1, n2);
  if (m == 0) return {};

  const int cols = static_cast<int>(u.cols());
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n1, n2);
  // admissions[p]: number of distinct columns whose rank window admitted the
  // pair; last_col[p] deduplicates admissions within one column.
  std::vector<int> admissions(static_cast<std::size_t>(n1) * n2, 0);
  std::vector<int> last_col(static_cast<std::size_t>(n1) * n2, -1);
  auto admit = [&](int i, int j, int c) {
    const std::size_t pos = static_cast<std::size_t>(i) * n2 + j;
    if (last_col[pos] != c) {
      last_col[pos] = c;
      if (admissions[pos]++ == 0) weights(i, j) = u.row(i).dot(v.row(j));
    }
  };

  for (int c = 0; c < cols; ++c) {
    const std::vector<int> left = descending_order(u.col(c));
    const std::vector<int> right = descending_order(v.col(c));
    for (int p = 0; p < m; ++p) {
      for (int o = 0; o < b; ++o) {
        if (p + o < n2) admit(left[p], right[p + o], c);
        if (p + o < n1) admit(left[p + o], right[p], c);
      }
    }
  }

  // Rank-consensus scaling; uniform (2x) once b covers every offset, so the
  // b = n case stays the plain exact matching on u * v^T.
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const std::size_t pos = static_cast<std::size_t>(i) * n2 + j;
      if (admissions[pos] > 0) {
        weights(i, j) *= 1.0 + static_cast<double>(admissions[pos]) / cols;
      }
    }
  }

  return max_weight_assignment(weights);
}

Alignment progressive_match(const FactorSet& f, ProgressiveVariant variant,
                            int b) {
  const int k = f.modes();
  const int rank = f.rank();
  if (k < 2) {
    throw std::invalid_argument("progressive_match: need at least two modes");
  }
  if (b < 1) {
    throw std::invalid_argument("progressive_match: b must be >= 1");
  }
  for (int i = 0; i < k; ++i) {
    if (f.mode_size(i) == 0) {
      throw std::runtime_error("progressive_match: mode with no nodes");
    }
  }

  std::vector<std::pair<int, int>> pairs =
      lowrank_bipartite_match(f.factors[0], f.factors[1], b);
  int rows = static_cast<int>(pairs.size());
  if (rows == 0) {
    throw std::runtime_error("progressive_match: no matched rows remain");
  }

  Alignment a;
  a.tuples = Eigen::MatrixXi::Zero(rows, k);
  Eigen::MatrixXd folded_prod(rows, rank), folded_sum(rows, rank);
  for (int r = 0; r < rows; ++r) {
    const auto [x, y] = pairs[r];
    a.tuples(r, 0) = x;
    a.tuples(r, 1) = y;
    folded_prod.row(r) = f.factors[0].row(x).cwiseProduct(f.factors[1].row(y));
    folded_sum.row(r) = f.factors[0].row(x) + f.factors[1].row(y);
  }
  normalize_rows_in_place(folded_prod);

  for (int mode = 2; mode < k; ++mode) {
    Eigen::MatrixXd folded;
    if (variant == ProgressiveVariant::kProduct) {
      folded = folded_prod;
    } else {
      const double ps = folded_prod.sum();
      const double ss = folded_sum.sum();
      if (ps > 0.0 && ss > 0.0) {
        folded = 0.5 * folded_prod / ps + 0.5 * folded_sum / ss;
      } else if (ss > 0.0) {
        folded = folded_sum / ss;
      } else {
        folded = folded_prod;
      }
    }

    pairs = lowrank_bipartite_match(folded, f.factors[mode], b);
    const int next_rows = static_cast<int>(pairs.size());
    if (next_rows == 0) {
      throw std::runtime_error("progressive_match: no matched rows remain");
    }

    Eigen::MatrixXi tuples(next_rows, k);
    Eigen::MatrixXd next_prod(next_rows, rank), next_sum(next_rows, rank);
    for (int r = 0; r < next_rows; ++r) {
      const auto [row, node] = pairs[r];
      tuples.row(r) = a.tuples.row(row);
      tuples(r, mode) = node;
      next_prod.row(r) =
          folded_prod.row(row).cwiseProduct(f.factors[mode].row(node));
      next_sum.row(r) = folded_sum.row(row) + f.factors[mode].row(node);
    }
    a.tuples = std::move(tuples);
    folded_prod = std::move(next_prod);
    folded_sum = std::move(next_sum);
    normalize_rows_in_place(folded_prod);
  }

  return a;
}

}  // namespace mna
