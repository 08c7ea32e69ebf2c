// Acceptance gate: every release-blocking behavior, one PASS/FAIL line each.
// Exits nonzero if any line fails. Expected wall time is a few minutes; the
// heavyweight noisy-problem sweeps are shared between criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mnalign/baselines.hpp"
#include "mnalign/cli.hpp"
#include "mnalign/eval.hpp"
#include "mnalign/factors.hpp"
#include "mnalign/matching.hpp"
#include "mnalign/oracles.hpp"
#include "mnalign/rng.hpp"
#include "mnalign/serialize.hpp"
#include "mnalign/synth.hpp"

using namespace mna;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(const std::string& id, const std::string& title, bool pass,
            const std::string& detail, double secs) {
  std::ostringstream line;
  line << "[" << id << "] " << title << ": " << detail << " ["
       << std::fixed << std::setprecision(1) << secs << "s] "
       << (pass ? "PASS" : "FAIL");
  std::cout << line.str() << "\n" << std::flush;
  if (!pass) ++g_failures;
}

std::string fmt(double x, int prec = 4) {
  std::ostringstream out;
  out << std::setprecision(prec) << x;
  return out.str();
}

double median(std::vector<double> values) {
  return percentile(std::move(values), 0.5);
}

Graph make_reference(const std::string& model, int n, std::uint64_t seed) {
  if (model == "er") return gen_erdos_renyi(n, 8.0, seed);
  return gen_pref_attach(n, 4, seed);
}

// Per-method recovery samples plus the d-approx certificate values from a
// batch of perturbed problems. Mirrors the sweep pipeline's seeding.
struct TrialBatch {
  std::map<Method, std::vector<double>> recovery;
  std::vector<double> d_values;
};

TrialBatch run_trials(const std::string& model, int n, int k, double p_e,
                      int iterations, int trials,
                      const std::vector<Method>& methods,
                      std::uint64_t base_seed) {
  TrialBatch batch;
  const GroundTruth truth = GroundTruth::identity(k, n);
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t base = base_seed + static_cast<std::uint64_t>(trial);
    const Graph reference = make_reference(model, n, mix_seed(base, 1));
    const ProblemInstance problem = perturb(reference, k, p_e, mix_seed(base, 2));
    for (const Method method : methods) {
      const MethodOutcome outcome =
          run_method(method, problem.instances, kDefaultAlpha, iterations, 10,
                     mix_seed(base, 3));
      batch.recovery[method].push_back(
          degree_weighted_recovery(outcome.alignment, truth, problem.instances));
      if (outcome.certificate) {
        batch.d_values.push_back(outcome.certificate->approximation_factor);
      }
    }
  }
  return batch;
}

std::string oracle_detail(const oracle::CheckResult& res) {
  std::ostringstream out;
  out << res.cases << " cases, " << res.failures << " failures, " << res.detail;
  return out.str();
}

// Mean seconds per compute_factors call, repeated until the sample window is
// long enough to trust on a busy machine.
double time_factors(const std::vector<Graph>& graphs, int iterations) {
  const auto start = Clock::now();
  int reps = 0;
  double sink = 0.0;
  do {
    const FactorSet f = compute_factors(graphs, kDefaultAlpha, iterations);
    sink += f.factors[0](0, 0);
    ++reps;
  } while (seconds_since(start) < 0.5);
  if (sink < 0.0) std::cerr << "";  // keep the factor work observable
  return seconds_since(start) / reps;
}

void criterion_1() {
  const auto start = Clock::now();
  oracle::VerifyCaps caps{4, 3, 4, 300, 7};
  const auto res = oracle::check_dense_equivalence(caps);
  report("C1", "dense Kronecker fixed-point equivalence (tol 1e-12)",
         res.pass(), oracle_detail(res), seconds_since(start));
}

void criterion_2() {
  const auto start = Clock::now();
  oracle::VerifyCaps caps{4, 3, 4, 1000, 7};
  const auto res = oracle::check_rearrangement(caps);
  report("C2", "sorted matching is optimal on rank-1 terms", res.pass(),
         oracle_detail(res), seconds_since(start));
}

void criterion_3() {
  const auto start = Clock::now();
  oracle::VerifyCaps caps{5, 3, 3, 500, 7};
  const auto res = oracle::check_certificate_soundness(caps);

  Eigen::MatrixXd u1(2, 2), u2(2, 2);
  u1 << 2, 1, 1, 2;
  u2 << 2, 2, 1, 1;
  FactorSet worked;
  worked.factors = {u1, u2};
  const auto [alignment, cert] = select_best_with_bound(worked);
  const bool worked_ok = cert.approximation_factor == 1.25 &&
                         matching_weight(alignment, worked) == 9.0;

  report("C3", "D-bound soundness vs exhaustive 3-d optimum",
         res.pass() && worked_ok,
         oracle_detail(res) + (worked_ok ? ", worked 2x2 D = 1.25 exact"
                                         : ", worked 2x2 FAILED"),
         seconds_since(start));
}

// C4 and C6 score the same 50-trial batches; run them once and report the
// two lines in numeric order around C5.
struct NoisyBatches {
  TrialBatch er;
  TrialBatch pa;
  double er_secs = 0.0;
  double pa_secs = 0.0;
  static constexpr int kTrials = 50;
};

NoisyBatches run_noisy_batches() {
  const std::vector<Method> methods = {Method::kDApprox, Method::kProg,
                                       Method::kProgPlus, Method::kDegree,
                                       Method::kRandom};
  const double p_e = 0.5 / 500;
  NoisyBatches out;
  auto start = Clock::now();
  out.er = run_trials("er", 500, 5, p_e, 8, NoisyBatches::kTrials, methods, 1000);
  out.er_secs = seconds_since(start);
  start = Clock::now();
  out.pa = run_trials("pa", 500, 5, p_e, 8, NoisyBatches::kTrials, methods, 2000);
  out.pa_secs = seconds_since(start);
  return out;
}

void criterion_4(const NoisyBatches& batches) {
  const auto& d = batches.er.d_values;
  const bool complete = d.size() == static_cast<std::size_t>(NoisyBatches::kTrials);
  const double worst_d =
      d.empty() ? std::numeric_limits<double>::infinity()
                : *std::max_element(d.begin(), d.end());
  report("C4", "certificate D stays small on noisy ER problems",
         complete && worst_d <= 1.2,
         "max D = " + fmt(worst_d) + " over " +
             std::to_string(NoisyBatches::kTrials) + " trials (bound 1.2)",
         batches.er_secs);
}

void criterion_6(const NoisyBatches& batches) {
  bool pass = true;
  std::ostringstream detail;
  for (const auto& [name, batch] :
       {std::pair{"er", &batches.er}, {"pa", &batches.pa}}) {
    const double prog = median(batch->recovery.at(Method::kProg));
    const double plus = median(batch->recovery.at(Method::kProgPlus));
    const double deg = median(batch->recovery.at(Method::kDegree));
    const double rnd = median(batch->recovery.at(Method::kRandom));
    pass = pass && prog >= 0.9 && plus >= 0.9 && prog > deg && prog > rnd &&
           plus > deg && plus > rnd;
    detail << name << ": prog " << fmt(prog) << " / prog+ " << fmt(plus)
           << " vs degree " << fmt(deg) << ", random " << fmt(rnd) << "; ";
  }
  report("C6", "progressive recovery beats baselines at low noise", pass,
         detail.str() + "medians over " + std::to_string(NoisyBatches::kTrials) +
             " trials",
         batches.pa_secs);
}

void criterion_5() {
  const auto start = Clock::now();
  const std::vector<Method> d_only = {Method::kDApprox};
  bool pass = true;
  std::ostringstream detail;
  for (const std::string model : {"er", "pa"}) {
    for (const int k : {5, 20}) {
      const std::uint64_t seed = model == "er" ? 3000 : 4000;
      const TrialBatch t8 =
          run_trials(model, 500, k, 0.5 / 500, 8, 20, d_only, seed + k);
      const TrialBatch t16 =
          run_trials(model, 500, k, 0.5 / 500, 16, 20, d_only, seed + k);
      const double m8 = median(t8.recovery.at(Method::kDApprox));
      const double m16 = median(t16.recovery.at(Method::kDApprox));
      const double rel = std::abs(m16 - m8) / std::max(m8, 1e-12);
      pass = pass && rel <= 0.02;
      detail << model << "/k=" << k << ": " << fmt(m8) << " -> " << fmt(m16)
             << " (rel " << fmt(rel, 2) << "); ";
    }
  }
  report("C5", "recovery settles by 8 iterations (t=16 within 2%)", pass,
         detail.str(), seconds_since(start));
}

void criterion_7() {
  const auto start = Clock::now();
  const std::vector<Method> methods = {Method::kProgPlus, Method::kPairwise};
  const TrialBatch k5 =
      run_trials("er", 500, 5, 0.5 / 500, 8, 10, methods, 5000);
  const TrialBatch k20 =
      run_trials("er", 500, 20, 0.5 / 500, 8, 10, methods, 6000);

  const double plus5 = median(k5.recovery.at(Method::kProgPlus));
  const double plus20 = median(k20.recovery.at(Method::kProgPlus));
  const double pair5 = median(k5.recovery.at(Method::kPairwise));
  const double pair20 = median(k20.recovery.at(Method::kPairwise));

  const bool plus_stable = std::abs(plus20 - plus5) <= 0.10 * plus5;
  const bool pairwise_drops = (pair5 - pair20) > 0.10 * pair5;
  report("C7", "prog+ robust to k while pairwise degrades",
         plus_stable && pairwise_drops,
         "prog+ " + fmt(plus5) + " -> " + fmt(plus20) + ", pairwise " +
             fmt(pair5) + " -> " + fmt(pair20) + " (10 trials)",
         seconds_since(start));
}

void criterion_8() {
  const auto start = Clock::now();
  bool pass = true;
  std::ostringstream detail;
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    const std::string model = i < 10 ? "er" : "pa";
    const int n = 40 + 13 * (i % 10);
    const Graph g = make_reference(model, n, 7000 + i);
    const std::vector<Graph> copies(3, g);
    Alignment identity;
    identity.tuples.resize(n, 3);
    for (int r = 0; r < n; ++r) identity.tuples.row(r).setConstant(r);
    const GroundTruth truth = GroundTruth::identity(3, n);
    const double rec = degree_weighted_recovery(identity, truth, copies);
    const double ovl = normalized_overlap(identity, copies);
    if (rec != 1.0 || ovl != 1.0) {
      pass = false;
      detail << model << "/n=" << n << " gave " << fmt(rec, 17) << "/"
             << fmt(ovl, 17) << "; ";
    }
    ++checked;
  }
  report("C8", "identity alignment scores exactly 1.0 / 1.0", pass,
         detail.str() + std::to_string(checked) + " problems, exact compare",
         seconds_since(start));
}

void criterion_9() {
  const auto start = Clock::now();
  oracle::VerifyCaps caps{8, 3, 3, 200, 7};
  const auto res = oracle::check_bipartite_exactness(caps);
  report("C9", "b = n low-rank matching equals the Hungarian optimum",
         res.pass(), oracle_detail(res), seconds_since(start));
}

void criterion_10() {
  const auto start = Clock::now();
  const Graph reference = gen_erdos_renyi(500, 8.0, 9100);
  const ProblemInstance problem = perturb(reference, 100, 0.5 / 500, 9200);

  const auto e2e_start = Clock::now();
  const MethodOutcome outcome = run_method(
      Method::kDApprox, problem.instances, kDefaultAlpha, 8, 10, 9300);
  const GroundTruth truth = GroundTruth::identity(100, 500);
  const double rec =
      degree_weighted_recovery(outcome.alignment, truth, problem.instances);
  const double e2e = seconds_since(e2e_start);

  const std::vector<Graph> first_half(problem.instances.begin(),
                                      problem.instances.begin() + 50);
  const double t50 = time_factors(first_half, 8);
  const double t100 = time_factors(problem.instances, 8);
  const double k_ratio = t100 / t50;

  report("C10", "desk-scale MultiLR-D run (k=100, n=500, t=8)",
         e2e < 300.0 && k_ratio <= 4.0,
         "end-to-end " + fmt(e2e, 3) + "s (bound 300s), recovery " + fmt(rec) +
             ", factor time x" + fmt(k_ratio, 3) +
             " for k 50 -> 100 (bound 4)",
         seconds_since(start));

  // Module invariant, checked at the same scale: doubling t at fixed
  // graphs costs at most ~2x (factor-of-3 tolerance).
  const auto inv_start = Clock::now();
  const double t50_16 = time_factors(first_half, 16);
  const double t_ratio = t50_16 / t50;
  report("INV", "factor time scales gently in t (t=16 vs t=8)",
         t_ratio <= 3.0, "x" + fmt(t_ratio, 3) + " (bound 3)",
         seconds_since(inv_start));
}

}  // namespace

int main() {
  const auto start = Clock::now();
  std::cout << "acceptance suite (tolerances pinned in source)\n";

  criterion_1();
  criterion_2();
  criterion_3();
  const NoisyBatches batches = run_noisy_batches();
  criterion_4(batches);
  criterion_5();
  criterion_6(batches);
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();

  std::cout << (g_failures == 0 ? "all checks passed"
                                : std::to_string(g_failures) + " check(s) FAILED")
            << " in " << fmt(seconds_since(start), 3) << "s\n";
  return g_failures == 0 ? 0 : 1;
}
