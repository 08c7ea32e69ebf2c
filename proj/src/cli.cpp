#include "mnalign/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mnalign/baselines.hpp"
#include "mnalign/eval.hpp"
#include "mnalign/serialize.hpp"
#include "mnalign/synth.hpp"

namespace mna {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

GroundTruth identity_truth(const std::vector<Graph>& graphs) {
  GroundTruth truth;
  for (const Graph& g : graphs) {
    truth.to_reference.push_back(
        Eigen::VectorXi::LinSpaced(g.num_nodes(), 0, g.num_nodes() - 1));
  }
  return truth;
}

struct TrialRow {
  int trial = 0;
  std::string method;
  std::optional<double> recovery;
  double overlap = 0.0;
  int tuples = 0;
  double weight = 0.0;
  std::optional<double> d_bound;
  double runtime = 0.0;
};

void write_trials_csv(const std::filesystem::path& path,
                      const std::vector<TrialRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "trial,method,recovery,overlap,aligned_tuples,objective_weight,"
         "d_bound,runtime_seconds\n";
  for (const TrialRow& r : rows) {
    out << r.trial << "," << r.method << ","
        << (r.recovery ? format_double(*r.recovery) : "") << ","
        << format_double(r.overlap) << "," << r.tuples << ","
        << format_double(r.weight) << ","
        << (r.d_bound ? format_double(*r.d_bound) : "") << ","
        << format_double(r.runtime) << "\n";
  }
}

void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<std::string>& methods,
                       const std::vector<TrialRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "method,metric,p20,median,p80\n";
  const std::vector<std::pair<std::string, std::function<std::optional<double>(
                                               const TrialRow&)>>>
      metrics = {
          {"recovery", [](const TrialRow& r) { return r.recovery; }},
          {"overlap",
           [](const TrialRow& r) { return std::optional<double>(r.overlap); }},
          {"objective_weight",
           [](const TrialRow& r) { return std::optional<double>(r.weight); }},
          {"runtime_seconds",
           [](const TrialRow& r) { return std::optional<double>(r.runtime); }},
      };
  for (const std::string& method : methods) {
    for (const auto& [metric, get] : metrics) {
      std::vector<double> values;
      for (const TrialRow& r : rows) {
        if (r.method != method) continue;
        if (const auto v = get(r)) values.push_back(*v);
      }
      if (values.empty()) continue;
      out << method << "," << metric << ","
          << format_double(percentile(values, 0.2)) << ","
          << format_double(percentile(values, 0.5)) << ","
          << format_double(percentile(values, 0.8)) << "\n";
    }
  }
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["model"] = c.model;
  j["n"] = c.n;
  if (c.model == "er") j["avg_degree"] = c.avg_degree;
  if (c.model == "pa") j["theta"] = c.theta;
  j["k"] = c.k;
  j["p_e"] = c.p_e;
  j["alpha"] = c.alpha;
  j["iterations"] = c.iterations;
  j["b"] = c.b;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["methods"] = c.methods;
  j["threads"] = c.threads;
  return j;
}

void validate_config(const ExperimentConfig& c) {
  if (c.model != "er" && c.model != "pa") {
    throw std::invalid_argument("model must be er or pa");
  }
  if (c.model == "er" && (c.n < 2 || c.avg_degree <= 0.0 || c.avg_degree > c.n - 1)) {
    throw std::invalid_argument("er needs n >= 2 and 0 < avg_degree <= n-1");
  }
  if (c.model == "pa" && (c.n < 5 || c.theta < 1 || c.theta > 5)) {
    throw std::invalid_argument("pa needs n >= 5 and 1 <= theta <= 5");
  }
  if (c.k < 2) throw std::invalid_argument("k must be >= 2");
  if (c.p_e < 0.0 || c.p_e > 1.0) throw std::invalid_argument("p_e must be in [0, 1]");
  if (c.alpha <= 0.0 || c.alpha >= 1.0) throw std::invalid_argument("alpha must be in (0, 1)");
  if (c.iterations < 0) throw std::invalid_argument("iterations must be >= 0");
  if (c.b < 1) throw std::invalid_argument("b must be >= 1");
  if (c.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (c.threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (c.methods.empty()) throw std::invalid_argument("at least one method required");
  for (const std::string& m : c.methods) {
    if (!parse_method(m)) throw std::invalid_argument("unknown method: " + m);
  }
}

Graph generate_reference(const std::string& model, int n, double avg_degree,
                         int theta, std::uint64_t seed) {
  if (model == "er") return gen_erdos_renyi(n, avg_degree, seed);
  if (model == "pa") return gen_pref_attach(n, theta, seed);
  throw std::invalid_argument("model must be er or pa");
}

}  // namespace

std::optional<Method> parse_method(const std::string& name) {
  if (name == "d-approx") return Method::kDApprox;
  if (name == "prog") return Method::kProg;
  if (name == "prog-plus") return Method::kProgPlus;
  if (name == "degree") return Method::kDegree;
  if (name == "random") return Method::kRandom;
  if (name == "pairwise") return Method::kPairwise;
  return std::nullopt;
}

std::string method_name(Method method) {
  switch (method) {
    case Method::kDApprox: return "d-approx";
    case Method::kProg: return "prog";
    case Method::kProgPlus: return "prog-plus";
    case Method::kDegree: return "degree";
    case Method::kRandom: return "random";
    case Method::kPairwise: return "pairwise";
  }
  return "?";
}

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names = {
      "d-approx", "prog", "prog-plus", "degree", "random", "pairwise"};
  return names;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * (static_cast<double>(values.size()) - 1.0);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

MethodOutcome run_method(Method method, const std::vector<Graph>& graphs,
                         double alpha, int iterations, int b,
                         std::uint64_t seed) {
  const auto start = Clock::now();
  MethodOutcome out;
  switch (method) {
    case Method::kDApprox: {
      const FactorSet f = compute_factors(graphs, alpha, iterations);
      auto [alignment, cert] = select_best_with_bound(f);
      out.alignment = std::move(alignment);
      out.certificate = std::move(cert);
      break;
    }
    case Method::kProg: {
      const FactorSet f = compute_factors(graphs, alpha, iterations);
      out.alignment = progressive_match(f, ProgressiveVariant::kProduct, b);
      break;
    }
    case Method::kProgPlus: {
      const FactorSet f = compute_factors(graphs, alpha, iterations);
      out.alignment = progressive_match(f, ProgressiveVariant::kMixture, b);
      break;
    }
    case Method::kDegree:
      out.alignment = degree_match(graphs);
      break;
    case Method::kRandom:
      out.alignment = random_match(graphs, seed);
      break;
    case Method::kPairwise:
      out.alignment = pairwise_consistent_match(graphs, alpha, iterations, b);
      break;
  }
  out.runtime_seconds = seconds_since(start);
  return out;
}

int cmd_align(const AlignOptions& opts) {
  const std::optional<Method> method = parse_method(opts.method);
  if (!method) {
    std::cerr << "error: unknown method: " << opts.method << "\n";
    return 1;
  }
  if (opts.graph_paths.size() < 2) {
    std::cerr << "error: need at least two graphs\n";
    return 1;
  }

  std::vector<Graph> graphs;
  for (const auto& path : opts.graph_paths) {
    EdgeListStats stats;
    graphs.push_back(load_edge_list(path, std::nullopt, &stats));
    if (stats.self_loops_dropped > 0) {
      std::cerr << "notice: " << path.string() << ": dropped "
                << stats.self_loops_dropped << " self-loop(s)\n";
    }
  }

  const MethodOutcome outcome = run_method(*method, graphs, opts.alpha,
                                           opts.iterations, opts.b, opts.seed);

  std::optional<GroundTruth> truth;
  if (opts.truth_manifest) {
    const json manifest = read_json_file(*opts.truth_manifest);
    if (manifest.value("ground_truth", "") != "identity") {
      std::cerr << "error: unsupported ground truth in manifest\n";
      return 1;
    }
    truth = identity_truth(graphs);
  } else {
    std::cerr << "notice: no ground truth supplied, recovery skipped\n";
  }

  const FactorSet f = compute_factors(graphs, opts.alpha, opts.iterations);
  MetricsReport metrics;
  metrics.aligned_tuples = outcome.alignment.size();
  metrics.objective_weight = matching_weight(outcome.alignment, f);
  metrics.overlap = normalized_overlap(outcome.alignment, graphs);
  if (truth) {
    metrics.recovery =
        degree_weighted_recovery(outcome.alignment, *truth, graphs);
  }
  if (outcome.certificate) {
    metrics.d_bound = outcome.certificate->approximation_factor;
  }
  metrics.runtime_seconds = outcome.runtime_seconds;

  json config;
  config["method"] = opts.method;
  config["alpha"] = opts.alpha;
  config["iterations"] = opts.iterations;
  config["b"] = opts.b;
  config["seed"] = opts.seed;
  json inputs = json::array();
  for (const auto& path : opts.graph_paths) inputs.push_back(path.string());
  config["graphs"] = std::move(inputs);

  json result;
  result["alignment"] = alignment_to_json(outcome.alignment);
  result["metrics"] = metrics_to_json(metrics);
  result["certificate"] = outcome.certificate
                              ? certificate_to_json(*outcome.certificate)
                              : json(nullptr);
  result["config"] = std::move(config);
  result["runtime_seconds"] = outcome.runtime_seconds;

  std::filesystem::create_directories(opts.out_dir);
  write_json_file(opts.out_dir / "alignment.json", result);
  write_alignment_csv(opts.out_dir / "alignment.csv", outcome.alignment);
  write_json_file(opts.out_dir / "metrics.json", metrics_to_json(metrics));
  {
    std::ofstream out(opts.out_dir / "metrics.csv");
    out << metrics_to_csv(metrics);
  }
  if (outcome.certificate) {
    write_json_file(opts.out_dir / "certificate.json",
                    certificate_to_json(*outcome.certificate));
  }
  if (opts.dump_factors) save_factor_set(f, *opts.dump_factors);

  std::cout << result.dump(2) << "\n";
  return 0;
}

int cmd_synth(const SynthOptions& opts) {
  const Graph reference = generate_reference(opts.model, opts.n,
                                             opts.avg_degree, opts.theta,
                                             mix_seed(opts.seed, 1));
  const ProblemInstance problem =
      perturb(reference, opts.k, opts.p_e, mix_seed(opts.seed, 2));

  std::filesystem::create_directories(opts.out_dir);
  save_edge_list(reference, opts.out_dir / "reference.txt");
  json instances = json::array();
  for (int i = 0; i < opts.k; ++i) {
    std::ostringstream name;
    name << "instance_" << i << ".txt";
    save_edge_list(problem.instances[i], opts.out_dir / name.str());
    instances.push_back(name.str());
  }

  json manifest;
  manifest["model"] = opts.model;
  manifest["n"] = opts.n;
  if (opts.model == "er") manifest["avg_degree"] = opts.avg_degree;
  if (opts.model == "pa") manifest["theta"] = opts.theta;
  manifest["k"] = opts.k;
  manifest["p_e"] = opts.p_e;
  manifest["seed"] = opts.seed;
  manifest["reference"] = "reference.txt";
  manifest["instances"] = std::move(instances);
  manifest["ground_truth"] = "identity";
  write_json_file(opts.out_dir / "manifest.json", manifest);

  std::cout << "wrote " << opts.k << " instances to " << opts.out_dir.string()
            << "\n";
  return 0;
}

int cmd_sweep(const ExperimentConfig& config) {
  validate_config(config);

  std::vector<Method> methods;
  for (const std::string& name : config.methods) methods.push_back(*parse_method(name));

  std::vector<std::vector<TrialRow>> per_trial(config.trials);
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (int trial = next.fetch_add(1); trial < config.trials;
         trial = next.fetch_add(1)) {
      if (failed.load()) return;
      try {
        const std::uint64_t base = config.seed + static_cast<std::uint64_t>(trial);
        const Graph reference =
            generate_reference(config.model, config.n, config.avg_degree,
                               config.theta, mix_seed(base, 1));
        const ProblemInstance problem =
            perturb(reference, config.k, config.p_e, mix_seed(base, 2));
        const GroundTruth truth = identity_truth(problem.instances);
        const FactorSet shared =
            compute_factors(problem.instances, config.alpha, config.iterations);

        for (const Method method : methods) {
          const MethodOutcome outcome =
              run_method(method, problem.instances, config.alpha,
                         config.iterations, config.b, mix_seed(base, 3));
          TrialRow row;
          row.trial = trial;
          row.method = method_name(method);
          row.recovery =
              degree_weighted_recovery(outcome.alignment, truth, problem.instances);
          row.overlap = normalized_overlap(outcome.alignment, problem.instances);
          row.tuples = outcome.alignment.size();
          row.weight = matching_weight(outcome.alignment, shared);
          if (outcome.certificate) {
            row.d_bound = outcome.certificate->approximation_factor;
          }
          row.runtime = outcome.runtime_seconds;
          per_trial[trial].push_back(std::move(row));
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failure = e.what();
        failed.store(true);
        return;
      }
    }
  };

  if (config.threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < config.threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failed.load()) throw std::runtime_error("sweep trial failed: " + failure);

  std::vector<TrialRow> rows;
  for (const auto& trial_rows : per_trial) {
    rows.insert(rows.end(), trial_rows.begin(), trial_rows.end());
  }

  std::filesystem::create_directories(config.out_dir);
  write_trials_csv(config.out_dir / "trials.csv", rows);
  write_summary_csv(config.out_dir / "summary.csv", config.methods, rows);
  write_json_file(config.out_dir / "config.json", config_to_json(config));

  for (const std::string& method : config.methods) {
    std::vector<double> rec, ovl;
    for (const TrialRow& r : rows) {
      if (r.method != method) continue;
      if (r.recovery) rec.push_back(*r.recovery);
      ovl.push_back(r.overlap);
    }
    std::cout << method << ": median recovery "
              << (rec.empty() ? 0.0 : percentile(rec, 0.5))
              << ", median overlap "
              << (ovl.empty() ? 0.0 : percentile(ovl, 0.5)) << "\n";
  }
  return 0;
}

int cmd_verify(const VerifyOptions& opts) {
  oracle::VerifyCaps caps;
  caps.max_n = opts.max_n;
  caps.max_k = opts.max_k;
  caps.max_t = opts.max_t;
  caps.cases = opts.cases;
  caps.seed = opts.seed;

  bool all_pass = true;
  for (const oracle::CheckResult& res : oracle::run_all_checks(caps)) {
    std::cout << res.name << ": " << res.cases << " cases, " << res.detail
              << " ... " << (res.pass() ? "PASS" : "FAIL") << "\n";
    all_pass = all_pass && res.pass();
  }
  return all_pass ? 0 : 2;
}

}  // namespace mna
