#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "mnalign/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Multiple network alignment via exact low-rank walk factors"};
  app.require_subcommand(1);

  mna::AlignOptions align_opts;
  std::string align_out = align_opts.out_dir.string();
  std::string truth_path, dump_path;
  CLI::App* align = app.add_subcommand("align", "Align edge-list graphs");
  align->add_option("graphs", align_opts.graph_paths, "edge-list files")
      ->required()
      ->expected(2, -1)
      ->check(CLI::ExistingFile);
  align->add_option("--method", align_opts.method, "alignment method")
      ->check(CLI::IsMember(mna::method_names()))
      ->capture_default_str();
  align->add_option("--alpha", align_opts.alpha, "walk restart weight")
      ->capture_default_str();
  align->add_option("--iters", align_opts.iterations, "fixed-point iterations")
      ->capture_default_str();
  align->add_option("--b", align_opts.b, "candidate window width")
      ->capture_default_str();
  align->add_option("--seed", align_opts.seed, "random seed")
      ->capture_default_str();
  align->add_option("--out", align_out, "output directory")
      ->capture_default_str();
  align->add_option("--truth", truth_path,
                    "synth manifest declaring ground truth");
  align->add_option("--dump-factors", dump_path,
                    "directory for the factor debug bundle");

  mna::SynthOptions synth_opts;
  std::string synth_out = synth_opts.out_dir.string();
  double synth_pe_over_n = -1.0;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic problem");
  synth->add_option("--model", synth_opts.model, "er or pa")
      ->check(CLI::IsMember({"er", "pa"}))
      ->capture_default_str();
  synth->add_option("--n", synth_opts.n, "nodes per graph")->capture_default_str();
  synth->add_option("--avg-degree", synth_opts.avg_degree, "er expected degree")
      ->capture_default_str();
  synth->add_option("--theta", synth_opts.theta, "pa edges per new vertex")
      ->capture_default_str();
  synth->add_option("--k", synth_opts.k, "number of instances")
      ->capture_default_str();
  CLI::Option* synth_pe =
      synth->add_option("--pe", synth_opts.p_e, "edge deletion probability")
          ->capture_default_str();
  synth->add_option("--pe-over-n", synth_pe_over_n,
                    "edge deletion probability as c/n")
      ->excludes(synth_pe);
  synth->add_option("--seed", synth_opts.seed, "random seed")
      ->capture_default_str();
  synth->add_option("--out", synth_out, "output directory")
      ->capture_default_str();

  mna::ExperimentConfig sweep_cfg;
  std::string sweep_out = sweep_cfg.out_dir.string();
  double sweep_pe_over_n = -1.0;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a synthetic benchmark sweep");
  sweep->add_option("--model", sweep_cfg.model, "er or pa")
      ->check(CLI::IsMember({"er", "pa"}))
      ->capture_default_str();
  sweep->add_option("--n", sweep_cfg.n, "nodes per graph")->capture_default_str();
  sweep->add_option("--avg-degree", sweep_cfg.avg_degree, "er expected degree")
      ->capture_default_str();
  sweep->add_option("--theta", sweep_cfg.theta, "pa edges per new vertex")
      ->capture_default_str();
  sweep->add_option("--k", sweep_cfg.k, "number of instances")
      ->capture_default_str();
  CLI::Option* sweep_pe =
      sweep->add_option("--pe", sweep_cfg.p_e, "edge deletion probability")
          ->capture_default_str();
  sweep->add_option("--pe-over-n", sweep_pe_over_n,
                    "edge deletion probability as c/n")
      ->excludes(sweep_pe);
  sweep->add_option("--alpha", sweep_cfg.alpha, "walk restart weight")
      ->capture_default_str();
  sweep->add_option("--iters", sweep_cfg.iterations, "fixed-point iterations")
      ->capture_default_str();
  sweep->add_option("--b", sweep_cfg.b, "candidate window width")
      ->capture_default_str();
  sweep->add_option("--trials", sweep_cfg.trials, "number of trials")
      ->capture_default_str();
  sweep->add_option("--seed", sweep_cfg.seed, "base seed; trial i uses seed+i")
      ->capture_default_str();
  sweep->add_option("--methods", sweep_cfg.methods, "comma-separated methods")
      ->delimiter(',')
      ->check(CLI::IsMember(mna::method_names()))
      ->capture_default_str();
  sweep->add_option("--threads", sweep_cfg.threads, "worker threads")
      ->capture_default_str();
  sweep->add_option("--out", sweep_out, "output directory")
      ->capture_default_str();

  mna::VerifyOptions verify_opts;
  CLI::App* verify = app.add_subcommand("verify", "Run the oracle check suites");
  verify->add_option("--max-n", verify_opts.max_n, "node cap for dense oracles")
      ->capture_default_str();
  verify->add_option("--max-k", verify_opts.max_k, "mode cap")
      ->capture_default_str();
  verify->add_option("--max-t", verify_opts.max_t, "iteration cap")
      ->capture_default_str();
  verify->add_option("--cases", verify_opts.cases, "random cases per suite")
      ->capture_default_str();
  verify->add_option("--seed", verify_opts.seed, "random seed")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*align) {
      align_opts.out_dir = align_out;
      if (!truth_path.empty()) align_opts.truth_manifest = truth_path;
      if (!dump_path.empty()) align_opts.dump_factors = dump_path;
      return mna::cmd_align(align_opts);
    }
    if (*synth) {
      synth_opts.out_dir = synth_out;
      if (synth_pe_over_n >= 0.0) synth_opts.p_e = synth_pe_over_n / synth_opts.n;
      return mna::cmd_synth(synth_opts);
    }
    if (*sweep) {
      sweep_cfg.out_dir = sweep_out;
      if (sweep_pe_over_n >= 0.0) sweep_cfg.p_e = sweep_pe_over_n / sweep_cfg.n;
      return mna::cmd_sweep(sweep_cfg);
    }
    if (*verify) return mna::cmd_verify(verify_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
