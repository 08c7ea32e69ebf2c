#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mnalign/alignment.hpp"
#include "mnalign/factors.hpp"
#include "mnalign/graph.hpp"
#include "mnalign/matching.hpp"
#include "mnalign/oracles.hpp"

namespace mna {

enum class Method {
  kDApprox,   // best rank-1 sorted matching with D certificate
  kProg,      // progressive, product folding
  kProgPlus,  // progressive, product+sum mixture folding
  kDegree,
  kRandom,
  kPairwise,
};

std::optional<Method> parse_method(const std::string& name);
std::string method_name(Method method);
const std::vector<std::string>& method_names();

struct AlignOptions {
  std::vector<std::filesystem::path> graph_paths;
  std::string method = "prog-plus";
  double alpha = kDefaultAlpha;
  int iterations = kDefaultIterations;
  int b = 10;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "align_out";
  std::optional<std::filesystem::path> truth_manifest;
  std::optional<std::filesystem::path> dump_factors;
};

struct SynthOptions {
  std::string model = "er";  // er | pa
  int n = 500;
  double avg_degree = 8.0;
  int theta = 4;
  int k = 5;
  double p_e = 0.0;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "synth_out";
};

struct ExperimentConfig {
  std::string model = "er";
  int n = 500;
  double avg_degree = 8.0;
  int theta = 4;
  int k = 5;
  double p_e = 0.0;
  double alpha = kDefaultAlpha;
  int iterations = kDefaultIterations;
  int b = 10;
  int trials = 50;
  std::uint64_t seed = 0;
  std::vector<std::string> methods = {"prog-plus"};
  int threads = 1;
  std::filesystem::path out_dir = "sweep_out";
};

struct VerifyOptions {
  int max_n = 4;
  int max_k = 3;
  int max_t = 4;
  int cases = 200;
  std::uint64_t seed = 7;
};

// One method run on one problem. Timing covers everything the method needs,
// including its own factor computation.
struct MethodOutcome {
  Alignment alignment;
  std::optional<BoundCertificate> certificate;
  double runtime_seconds = 0.0;
};

MethodOutcome run_method(Method method, const std::vector<Graph>& graphs,
                         double alpha, int iterations, int b,
                         std::uint64_t seed);

// Subcommand entry points. Return process exit codes: 0 on success, 1 on
// usage/runtime errors, 2 when verification checks fail.
int cmd_align(const AlignOptions& opts);
int cmd_synth(const SynthOptions& opts);
int cmd_sweep(const ExperimentConfig& config);
int cmd_verify(const VerifyOptions& opts);

// Interpolated percentile of an unsorted sample, q in [0, 1].
double percentile(std::vector<double> values, double q);

}  // namespace mna
