#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mnalign/cli.hpp"
#include "mnalign/serialize.hpp"
#include "mnalign/synth.hpp"

using namespace mna;
namespace fs = std::filesystem;

namespace {

// Swaps a stream buffer out for the lifetime of a test block so subcommand
// chatter lands in a string instead of the test log.
class CaptureStream {
 public:
  explicit CaptureStream(std::ostream& stream)
      : stream_(stream), old_(stream.rdbuf(buffer_.rdbuf())) {}
  ~CaptureStream() { stream_.rdbuf(old_); }
  std::string str() const { return buffer_.str(); }

 private:
  std::ostream& stream_;
  std::ostringstream buffer_;
  std::streambuf* old_;
};

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// CSV text minus the trailing (runtime) column of every line; wall-clock
// fields are the one part of the outputs exempt from byte determinism.
std::string drop_last_column(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    const auto cut = line.rfind(',');
    out << (cut == std::string::npos ? line : line.substr(0, cut)) << "\n";
  }
  return out.str();
}

std::string summary_without_runtime(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find(",runtime_seconds,") == std::string::npos) out << line << "\n";
  }
  return out.str();
}

double summary_median(const fs::path& summary, const std::string& method,
                      const std::string& metric) {
  std::ifstream in(summary);
  REQUIRE(in.good());
  std::string line;
  const std::string prefix = method + "," + metric + ",";
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) != 0) continue;
    std::istringstream row(line.substr(prefix.size()));
    std::string p20, median;
    std::getline(row, p20, ',');
    std::getline(row, median, ',');
    return std::stod(median);
  }
  FAIL("summary row not found: " << prefix);
  return -1.0;
}

SynthOptions small_synth(const fs::path& out, double p_e, std::uint64_t seed) {
  SynthOptions opts;
  opts.model = "er";
  opts.n = 40;
  opts.avg_degree = 5.0;
  opts.k = 3;
  opts.p_e = p_e;
  opts.seed = seed;
  opts.out_dir = out;
  return opts;
}

}  // namespace

TEST_CASE("percentile interpolates like a linear quantile") {
  CHECK(percentile({1, 2, 3, 4}, 0.5) == 2.5);
  CHECK(percentile({4, 1, 3, 2}, 0.2) == doctest::Approx(1.6));
  CHECK(percentile({4, 1, 3, 2}, 0.8) == doctest::Approx(3.4));
  CHECK(percentile({1, 2, 3, 4}, 0.0) == 1.0);
  CHECK(percentile({1, 2, 3, 4}, 1.0) == 4.0);
  CHECK(percentile({7}, 0.5) == 7.0);
  CHECK_THROWS_AS(percentile({}, 0.5), std::invalid_argument);
}

TEST_CASE("method names parse both ways") {
  REQUIRE(method_names().size() == 6);
  for (const std::string& name : method_names()) {
    const auto method = parse_method(name);
    REQUIRE(method.has_value());
    CHECK(method_name(*method) == name);
  }
  CHECK_FALSE(parse_method("isorank").has_value());
}

TEST_CASE("cmd_synth writes a complete, reproducible problem directory") {
  const fs::path dir_a = temp_dir("synth_a");
  const fs::path dir_b = temp_dir("synth_b");
  SynthOptions opts = small_synth(dir_a, 0.2, 9);
  {
    CaptureStream out(std::cout);
    CHECK(cmd_synth(opts) == 0);
    CHECK(out.str().find("3 instances") != std::string::npos);
  }
  CHECK(fs::exists(dir_a / "reference.txt"));
  for (int i = 0; i < 3; ++i) {
    CHECK(fs::exists(dir_a / ("instance_" + std::to_string(i) + ".txt")));
  }

  const json manifest = read_json_file(dir_a / "manifest.json");
  CHECK(manifest["model"] == "er");
  CHECK(manifest["n"] == 40);
  CHECK(manifest["avg_degree"] == 5.0);
  CHECK(manifest["k"] == 3);
  CHECK(manifest["p_e"] == 0.2);
  CHECK(manifest["ground_truth"] == "identity");
  CHECK(manifest["reference"] == "reference.txt");
  REQUIRE(manifest["instances"].size() == 3);

  opts.out_dir = dir_b;
  {
    CaptureStream out(std::cout);
    CHECK(cmd_synth(opts) == 0);
  }
  CHECK(read_file(dir_a / "reference.txt") == read_file(dir_b / "reference.txt"));
  for (int i = 0; i < 3; ++i) {
    const std::string name = "instance_" + std::to_string(i) + ".txt";
    CHECK(read_file(dir_a / name) == read_file(dir_b / name));
  }
  CHECK(read_file(dir_a / "manifest.json") == read_file(dir_b / "manifest.json"));

  SynthOptions bad = opts;
  bad.n = 1;
  CHECK_THROWS_AS(cmd_synth(bad), std::invalid_argument);
}

TEST_CASE("cmd_align aligns two identical graphs to the identity") {
  const fs::path dir = temp_dir("align_identity");
  fs::create_directories(dir);
  const Graph tree(7, {{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 6}});
  save_edge_list(tree, dir / "a.txt");
  save_edge_list(tree, dir / "b.txt");

  AlignOptions opts;
  opts.graph_paths = {dir / "a.txt", dir / "b.txt"};
  opts.method = "prog-plus";
  opts.b = 7;
  opts.out_dir = dir / "out";

  std::string stdout_text, stderr_text;
  {
    CaptureStream out(std::cout);
    CaptureStream err(std::cerr);
    CHECK(cmd_align(opts) == 0);
    stdout_text = out.str();
    stderr_text = err.str();
  }
  CHECK(stderr_text.find("recovery skipped") != std::string::npos);

  const json result = json::parse(stdout_text);
  for (const char* key :
       {"alignment", "metrics", "certificate", "config", "runtime_seconds"}) {
    CHECK(result.contains(key));
  }
  CHECK(result["certificate"].is_null());
  CHECK(result["metrics"]["recovery"].is_null());
  CHECK(result["metrics"]["overlap"] == 1.0);
  REQUIRE(result["alignment"].size() == 7);
  for (int r = 0; r < 7; ++r) {
    CHECK(result["alignment"][r][0] == result["alignment"][r][1]);
  }

  CHECK(fs::exists(opts.out_dir / "alignment.json"));
  CHECK(fs::exists(opts.out_dir / "alignment.csv"));
  CHECK(fs::exists(opts.out_dir / "metrics.json"));
  CHECK(fs::exists(opts.out_dir / "metrics.csv"));
  CHECK_FALSE(fs::exists(opts.out_dir / "certificate.json"));
  CHECK(read_json_file(opts.out_dir / "alignment.json") == result);
}

TEST_CASE("cmd_align scores perfect recovery against a synth manifest") {
  const fs::path dir = temp_dir("align_recovery");
  {
    CaptureStream out(std::cout);
    REQUIRE(cmd_synth(small_synth(dir, 0.0, 3)) == 0);
  }

  AlignOptions opts;
  for (int i = 0; i < 3; ++i) {
    opts.graph_paths.push_back(dir / ("instance_" + std::to_string(i) + ".txt"));
  }
  opts.method = "prog-plus";
  opts.b = 40;
  opts.truth_manifest = dir / "manifest.json";
  opts.out_dir = dir / "out";

  json result;
  {
    CaptureStream out(std::cout);
    REQUIRE(cmd_align(opts) == 0);
    result = json::parse(out.str());
  }
  CHECK(result["metrics"]["recovery"] == 1.0);
  CHECK(result["metrics"]["overlap"] == 1.0);

  json manifest = read_json_file(dir / "manifest.json");
  manifest["ground_truth"] = "shuffled";
  write_json_file(dir / "manifest_bad.json", manifest);
  opts.truth_manifest = dir / "manifest_bad.json";
  {
    CaptureStream out(std::cout);
    CaptureStream err(std::cerr);
    CHECK(cmd_align(opts) == 1);
  }
}

TEST_CASE("cmd_align certifies a d-approx run on a noisy problem") {
  const fs::path dir = temp_dir("align_dapprox");
  SynthOptions synth = small_synth(dir, 0.5 / 120, 17);
  synth.n = 120;
  {
    CaptureStream out(std::cout);
    REQUIRE(cmd_synth(synth) == 0);
  }

  AlignOptions opts;
  for (int i = 0; i < 3; ++i) {
    opts.graph_paths.push_back(dir / ("instance_" + std::to_string(i) + ".txt"));
  }
  opts.method = "d-approx";
  opts.truth_manifest = dir / "manifest.json";
  opts.out_dir = dir / "out";
  opts.dump_factors = dir / "factors";

  json result;
  {
    CaptureStream out(std::cout);
    REQUIRE(cmd_align(opts) == 0);
    result = json::parse(out.str());
  }
  REQUIRE(result["certificate"].is_object());
  const double d = result["certificate"]["approximation_factor"].get<double>();
  CHECK(d >= 1.0);
  CHECK(d <= 1.2);
  CHECK(result["metrics"]["d_bound"] == d);
  CHECK(fs::exists(opts.out_dir / "certificate.json"));

  const FactorSet dumped = load_factor_set(dir / "factors");
  CHECK(dumped.modes() == 3);
  CHECK(dumped.rank() == kDefaultIterations + 1);
}

TEST_CASE("cmd_align is reproducible for the random method") {
  const fs::path dir = temp_dir("align_random");
  fs::create_directories(dir);
  const Graph g = gen_erdos_renyi(18, 4.0, 21);
  save_edge_list(g, dir / "a.txt");
  save_edge_list(g, dir / "b.txt");

  AlignOptions opts;
  opts.graph_paths = {dir / "a.txt", dir / "b.txt"};
  opts.method = "random";
  opts.seed = 12;

  opts.out_dir = dir / "out1";
  {
    CaptureStream out(std::cout);
    CaptureStream err(std::cerr);
    REQUIRE(cmd_align(opts) == 0);
  }
  opts.out_dir = dir / "out2";
  {
    CaptureStream out(std::cout);
    CaptureStream err(std::cerr);
    REQUIRE(cmd_align(opts) == 0);
  }
  opts.out_dir = dir / "out3";
  opts.seed = 13;
  {
    CaptureStream out(std::cout);
    CaptureStream err(std::cerr);
    REQUIRE(cmd_align(opts) == 0);
  }
  CHECK(read_file(dir / "out1" / "alignment.csv") ==
        read_file(dir / "out2" / "alignment.csv"));
  CHECK(read_file(dir / "out1" / "alignment.csv") !=
        read_file(dir / "out3" / "alignment.csv"));
}

TEST_CASE("cmd_align rejects usage errors with exit code 1") {
  const fs::path dir = temp_dir("align_usage");
  fs::create_directories(dir);
  save_edge_list(Graph(3, {{0, 1}, {1, 2}}), dir / "a.txt");

  AlignOptions one_graph;
  one_graph.graph_paths = {dir / "a.txt"};
  AlignOptions bad_method;
  bad_method.graph_paths = {dir / "a.txt", dir / "a.txt"};
  bad_method.method = "spectral";
  AlignOptions missing;
  missing.graph_paths = {dir / "a.txt", dir / "missing.txt"};

  CaptureStream out(std::cout);
  CaptureStream err(std::cerr);
  CHECK(cmd_align(one_graph) == 1);
  CHECK(cmd_align(bad_method) == 1);
  CHECK_THROWS_AS(cmd_align(missing), std::runtime_error);
}

TEST_CASE("cmd_sweep writes per-trial and summary tables deterministically") {
  ExperimentConfig config;
  config.model = "er";
  config.n = 16;
  config.avg_degree = 4.0;
  config.k = 3;
  config.p_e = 0.1;
  config.iterations = 4;
  config.b = 16;
  config.trials = 4;
  config.seed = 11;
  config.methods = {"prog-plus", "degree", "random", "d-approx"};

  const fs::path first_dir = temp_dir("sweep_t1");
  config.out_dir = first_dir;
  {
    CaptureStream out(std::cout);
    CHECK(cmd_sweep(config) == 0);
    CHECK(out.str().find("prog-plus: median recovery") != std::string::npos);
  }

  const std::string trials = read_file(config.out_dir / "trials.csv");
  CHECK(std::count(trials.begin(), trials.end(), '\n') == 1 + 4 * 4);
  CHECK(trials.rfind("trial,method,recovery,overlap,aligned_tuples,"
                     "objective_weight,d_bound,runtime_seconds\n",
                     0) == 0);
  CHECK(trials.find("d-approx") != std::string::npos);

  const json config_json = read_json_file(config.out_dir / "config.json");
  CHECK(config_json["model"] == "er");
  CHECK(config_json["n"] == 16);
  CHECK(config_json["trials"] == 4);
  CHECK(config_json["methods"].size() == 4);

  // Same seed on two threads: identical rows, runtime column aside.
  config.out_dir = temp_dir("sweep_t2");
  config.threads = 2;
  {
    CaptureStream out(std::cout);
    CHECK(cmd_sweep(config) == 0);
  }
  CHECK(drop_last_column(trials) ==
        drop_last_column(read_file(config.out_dir / "trials.csv")));
  CHECK(summary_without_runtime(read_file(first_dir / "summary.csv")) ==
        summary_without_runtime(read_file(config.out_dir / "summary.csv")));
}

TEST_CASE("cmd_sweep validates the config before writing anything") {
  ExperimentConfig config;
  config.out_dir = temp_dir("sweep_invalid");

  config.model = "grid";
  CHECK_THROWS_AS(cmd_sweep(config), std::invalid_argument);
  config.model = "er";
  config.trials = 0;
  CHECK_THROWS_AS(cmd_sweep(config), std::invalid_argument);
  config.trials = 1;
  config.methods = {"prog-plus", "isorank"};
  CHECK_THROWS_AS(cmd_sweep(config), std::invalid_argument);
  config.methods = {"prog-plus"};
  config.p_e = 1.5;
  CHECK_THROWS_AS(cmd_sweep(config), std::invalid_argument);

  CHECK_FALSE(fs::exists(config.out_dir));
}

TEST_CASE("cmd_sweep recovers cleanly at zero noise and degrades with it") {
  ExperimentConfig config;
  config.model = "er";
  config.n = 120;
  config.avg_degree = 5.0;
  config.k = 3;
  config.p_e = 0.0;
  config.b = 10;
  config.trials = 3;
  config.seed = 29;
  config.methods = {"prog"};
  config.out_dir = temp_dir("sweep_clean");
  {
    CaptureStream out(std::cout);
    REQUIRE(cmd_sweep(config) == 0);
  }
  const double clean =
      summary_median(config.out_dir / "summary.csv", "prog", "recovery");
  CHECK(clean >= 0.95);

  config.p_e = 0.6;
  config.out_dir = temp_dir("sweep_noisy");
  {
    CaptureStream out(std::cout);
    REQUIRE(cmd_sweep(config) == 0);
  }
  const double noisy =
      summary_median(config.out_dir / "summary.csv", "prog", "recovery");
  CHECK(noisy < clean);
}

TEST_CASE("cmd_verify runs every oracle suite") {
  VerifyOptions opts;
  opts.max_n = 3;
  opts.max_k = 3;
  opts.max_t = 3;
  opts.cases = 60;

  std::string text;
  {
    CaptureStream out(std::cout);
    CHECK(cmd_verify(opts) == 0);
    text = out.str();
  }
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  for (const char* name : {"dense-walk equivalence", "rearrangement inequality",
                           "certificate soundness", "bipartite exactness"}) {
    CHECK(text.find(name) != std::string::npos);
  }
  CHECK(text.find("FAIL") == std::string::npos);
}
