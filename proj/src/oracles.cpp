#include "mnalign/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "mnalign/matching.hpp"

namespace mna::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Calls fn for every injective map [m] -> [n], built position by position.
void for_each_injection(int n, int m,
                        const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> cur(m);
  std::vector<char> used(n, 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == m) {
      fn(cur);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      cur[pos] = v;
      rec(pos + 1);
      used[v] = 0;
    }
  };
  rec(0);
}

// Kuhn-Munkres with potentials, minimizing; requires rows <= cols.
std::vector<int> km_min(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  const int m = static_cast<int>(a.cols());
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

Graph random_graph(int max_n, Rng& rng) {
  const int n = 1 + static_cast<int>(rng.uniform_int(max_n));
  const double p = rng.uniform();
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

std::string describe(double worst, const char* what) {
  std::ostringstream out;
  out << "worst " << what << " " << worst;
  return out.str();
}

}  // namespace

Eigen::MatrixXd dense_walk_matrix(const Graph& g) {
  const int n = g.num_nodes();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) == 0) {
      p.col(v).setConstant(1.0 / n);
      continue;
    }
    for (int u : g.neighbors(v)) p(u, v) = 1.0 / g.degree(v);
  }
  return p;
}

Eigen::VectorXd kron_fixed_point(const std::vector<Graph>& graphs, double alpha,
                                 int iterations,
                                 const std::vector<Eigen::VectorXd>& seeds) {
  Eigen::MatrixXd big = dense_walk_matrix(graphs[0]);
  Eigen::VectorXd h = seeds[0];
  for (std::size_t i = 1; i < graphs.size(); ++i) {
    big = kron(dense_walk_matrix(graphs[i]), big);
    h = kron(seeds[i], h);
  }
  Eigen::VectorXd y = h;
  for (int it = 0; it < iterations; ++it) {
    y = alpha * (big * y) + (1.0 - alpha) * h;
  }
  return y;
}

double exhaustive_matching_weight(const DenseTensor& t) {
  const int k = t.modes();
  const std::vector<int>& dims = t.dims();
  int amin = 0;
  for (int i = 1; i < k; ++i) {
    if (dims[i] < dims[amin]) amin = i;
  }
  const int m = dims[amin];

  // The smallest mode's injection can be fixed to the identity: relabeling
  // tuples costs nothing, and with nonnegative weights the optimum uses all
  // of its nodes.
  std::vector<std::vector<int>> sigma(k);
  sigma[amin].resize(m);
  std::iota(sigma[amin].begin(), sigma[amin].end(), 0);

  double best = -kInf;
  std::vector<int> idx(k);
  std::function<void(int)> rec = [&](int mode) {
    if (mode == k) {
      double w = 0.0;
      for (int r = 0; r < m; ++r) {
        for (int i = 0; i < k; ++i) idx[i] = sigma[i][r];
        w += t(idx);
      }
      best = std::max(best, w);
      return;
    }
    if (mode == amin) {
      rec(mode + 1);
      return;
    }
    for_each_injection(dims[mode], m, [&](const std::vector<int>& s) {
      sigma[mode] = s;
      rec(mode + 1);
    });
  };
  rec(0);
  return best;
}

double exhaustive_assignment_weight(const Eigen::MatrixXd& w) {
  const bool wide = w.rows() <= w.cols();
  const Eigen::MatrixXd m = wide ? w : Eigen::MatrixXd(w.transpose());
  double best = -kInf;
  for_each_injection(static_cast<int>(m.cols()), static_cast<int>(m.rows()),
                     [&](const std::vector<int>& s) {
                       double total = 0.0;
                       for (int r = 0; r < m.rows(); ++r) total += m(r, s[r]);
                       best = std::max(best, total);
                     });
  return best;
}

std::vector<int> hungarian_max_assignment(const Eigen::MatrixXd& w) {
  if (w.rows() <= w.cols()) {
    return km_min(-w);
  }
  const std::vector<int> col_to_row = km_min(Eigen::MatrixXd(-w.transpose()));
  std::vector<int> row_to_col(w.rows(), -1);
  for (int j = 0; j < static_cast<int>(col_to_row.size()); ++j) {
    if (col_to_row[j] >= 0) row_to_col[col_to_row[j]] = j;
  }
  return row_to_col;
}

double hungarian_max_weight(const Eigen::MatrixXd& w) {
  const std::vector<int> sol = hungarian_max_assignment(w);
  double total = 0.0;
  for (int i = 0; i < static_cast<int>(sol.size()); ++i) {
    if (sol[i] >= 0) total += w(i, sol[i]);
  }
  return total;
}

FactorSet random_factor_set(int k, int max_n, int max_rank, Rng& rng) {
  const int rank = 1 + static_cast<int>(rng.uniform_int(max_rank));
  FactorSet f;
  f.alpha = 0.5 + 0.4 * rng.uniform();
  f.iterations = rank - 1;
  const bool sparse = rng.bernoulli(0.35);
  for (int i = 0; i < k; ++i) {
    const int n = 1 + static_cast<int>(rng.uniform_int(max_n));
    Eigen::MatrixXd u(n, rank);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < rank; ++c) {
        double x = rng.uniform();
        if (sparse && rng.bernoulli(0.4)) x = 0.0;
        u(r, c) = x;
      }
    }
    if (sparse && rank > 1 && rng.bernoulli(0.2)) {
      u.col(static_cast<int>(rng.uniform_int(rank))).setZero();
    }
    f.factors.push_back(std::move(u));
    f.seed_vectors.push_back(Eigen::VectorXd::Constant(n, 1.0 / n));
  }
  // Keep at least one rank-1 term alive so selection has a candidate.
  for (int i = 0; i < k; ++i) {
    if (f.factors[i].col(0).maxCoeff() <= 0.0) {
      f.factors[i](static_cast<int>(rng.uniform_int(f.factors[i].rows())), 0) =
          0.5 + 0.5 * rng.uniform();
    }
  }
  return f;
}

CheckResult check_dense_equivalence(const VerifyCaps& caps) {
  CheckResult res;
  res.name = "dense-walk equivalence";
  Rng rng(mix_seed(caps.seed, 1));
  const double alphas[] = {0.5, 0.8, 0.9};
  const int combos = (caps.max_k - 1) * (caps.max_t + 1) * 3;
  const int reps = std::max(1, caps.cases / std::max(1, combos));

  for (int k = 2; k <= caps.max_k; ++k) {
    for (int t = 0; t <= caps.max_t; ++t) {
      for (const double alpha : alphas) {
        for (int rep = 0; rep < reps; ++rep) {
          std::vector<Graph> graphs;
          std::vector<Eigen::VectorXd> seeds;
          for (int i = 0; i < k; ++i) {
            graphs.push_back(random_graph(caps.max_n, rng));
            const int n = graphs.back().num_nodes();
            if (rng.bernoulli(0.3)) {
              Eigen::VectorXd s(n);
              for (int r = 0; r < n; ++r) s[r] = 0.05 + rng.uniform();
              s /= s.sum();
              seeds.push_back(std::move(s));
            } else {
              seeds.push_back(Eigen::VectorXd::Constant(n, 1.0 / n));
            }
          }
          const FactorSet f = compute_factors(graphs, alpha, t, &seeds);
          const DenseTensor dense = dense_reconstruct(f);
          const Eigen::VectorXd truth =
              kron_fixed_point(graphs, alpha, t, seeds);
          const double err = (dense.vec() - truth).cwiseAbs().maxCoeff();
          ++res.cases;
          res.worst = std::max(res.worst, err);
          if (err > 1e-12) ++res.failures;
        }
      }
    }
  }
  res.detail = describe(res.worst, "abs error");
  return res;
}

CheckResult check_rearrangement(const VerifyCaps& caps) {
  CheckResult res;
  res.name = "rearrangement inequality";
  Rng rng(mix_seed(caps.seed, 2));

  auto sorted_sum = [](std::vector<Eigen::VectorXd> seqs) {
    for (Eigen::VectorXd& s : seqs) {
      std::sort(s.data(), s.data() + s.size());
    }
    double total = 0.0;
    for (int r = 0; r < seqs[0].size(); ++r) {
      double prod = 1.0;
      for (const Eigen::VectorXd& s : seqs) prod *= s[r];
      total += prod;
    }
    return total;
  };
  auto permuted_sum = [](const std::vector<Eigen::VectorXd>& seqs,
                         const std::vector<std::vector<int>>& perms) {
    double total = 0.0;
    for (int r = 0; r < seqs[0].size(); ++r) {
      double prod = seqs[0][r];
      for (std::size_t i = 1; i < seqs.size(); ++i) prod *= seqs[i][perms[i - 1][r]];
      total += prod;
    }
    return total;
  };
  auto record = [&res](double permuted, double sorted) {
    ++res.cases;
    const double gap = permuted - sorted;
    res.worst = std::max(res.worst, gap);
    if (gap > 1e-9 * std::max(1.0, sorted)) ++res.failures;
  };

  // Exhaustive slice: every combination of permutations on the free modes.
  for (int n = 1; n <= std::min(4, caps.max_n); ++n) {
    for (int k = 2; k <= std::min(3, caps.max_k); ++k) {
      for (int draw = 0; draw < 3; ++draw) {
        std::vector<Eigen::VectorXd> seqs(k);
        for (auto& s : seqs) {
          s.resize(n);
          for (int r = 0; r < n; ++r) s[r] = rng.uniform();
        }
        const double sorted = sorted_sum(seqs);
        std::vector<std::vector<int>> perms(k - 1);
        for (auto& p : perms) {
          p.resize(n);
          std::iota(p.begin(), p.end(), 0);
        }
        std::function<void(int)> rec = [&](int mode) {
          if (mode == k - 1) {
            record(permuted_sum(seqs, perms), sorted);
            return;
          }
          std::sort(perms[mode].begin(), perms[mode].end());
          do {
            rec(mode + 1);
          } while (std::next_permutation(perms[mode].begin(), perms[mode].end()));
        };
        rec(0);
      }
    }
  }

  // Random slice: larger n and k with random permutations.
  const int random_cases = std::max(1000, caps.cases);
  for (int c = 0; c < random_cases; ++c) {
    const int n = 2 + static_cast<int>(rng.uniform_int(6));
    const int k = 2 + static_cast<int>(rng.uniform_int(4));
    std::vector<Eigen::VectorXd> seqs(k);
    for (auto& s : seqs) {
      s.resize(n);
      for (int r = 0; r < n; ++r) s[r] = rng.uniform() * (1.0 + rng.uniform_int(5));
    }
    std::vector<std::vector<int>> perms(k - 1);
    for (auto& p : perms) {
      p.resize(n);
      std::iota(p.begin(), p.end(), 0);
      rng.shuffle(p);
    }
    record(permuted_sum(seqs, perms), sorted_sum(seqs));
  }

  res.detail = describe(res.worst, "excess over sorted");
  return res;
}

CheckResult check_certificate_soundness(const VerifyCaps& caps) {
  CheckResult res;
  res.name = "certificate soundness";
  Rng rng(mix_seed(caps.seed, 3));

  int produced = 0;
  while (produced < caps.cases) {
    FactorSet f = random_factor_set(3, std::min(caps.max_n, 5),
                                    std::min(caps.max_t, 3) + 1, rng);
    const auto [alignment, cert] = select_best_with_bound(f);
    const double returned = matching_weight(alignment, f);
    const double optimum = exhaustive_matching_weight(dense_reconstruct(f));
    ++produced;
    ++res.cases;

    if (cert.approximation_factor < 1.0 - 1e-12) {
      ++res.failures;
      continue;
    }
    if (!std::isfinite(cert.approximation_factor)) continue;  // vacuous bound
    const double ceiling = cert.approximation_factor * returned;
    const double slack = optimum - ceiling;
    res.worst = std::max(res.worst, slack);
    if (slack > 1e-9 * std::max(1.0, optimum)) ++res.failures;
  }
  res.detail = describe(res.worst, "optimum excess over D*w");
  return res;
}

CheckResult check_bipartite_exactness(const VerifyCaps& caps) {
  CheckResult res;
  res.name = "bipartite exactness";
  Rng rng(mix_seed(caps.seed, 4));

  for (int c = 0; c < caps.cases; ++c) {
    const int n1 = 1 + static_cast<int>(rng.uniform_int(caps.max_n));
    const int n2 = 1 + static_cast<int>(rng.uniform_int(caps.max_n));
    const int r = 1 + static_cast<int>(rng.uniform_int(3));
    const bool sparse = rng.bernoulli(0.3);
    Eigen::MatrixXd u(n1, r), v(n2, r);
    auto fill = [&](Eigen::MatrixXd& m) {
      for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
          m(i, j) = (sparse && rng.bernoulli(0.3)) ? 0.0 : rng.uniform();
        }
      }
    };
    fill(u);
    fill(v);

    const int b = std::max(n1, n2);
    const auto pairs = lowrank_bipartite_match(u, v, b);
    double got = 0.0;
    for (const auto& [i, j] : pairs) got += u.row(i).dot(v.row(j));

    const Eigen::MatrixXd w = u * v.transpose();
    const double want = hungarian_max_weight(w);
    const double err = std::abs(got - want);
    ++res.cases;
    res.worst = std::max(res.worst, err);
    if (err > 1e-9 * std::max(1.0, want)) ++res.failures;
  }
  res.detail = describe(res.worst, "weight gap");
  return res;
}

std::vector<CheckResult> run_all_checks(const VerifyCaps& caps) {
  return {check_dense_equivalence(caps), check_rearrangement(caps),
          check_certificate_soundness(caps), check_bipartite_exactness(caps)};
}

}  // namespace mna::oracle
