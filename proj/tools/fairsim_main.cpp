#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "fairsim/config.hpp"
#include "fairsim/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"two-phase fairness re-ranking simulator"};
  app.require_subcommand(1);

  std::string genspec_path;
  std::string config_path;
  std::string outdir;
  std::string summary_root;
  std::optional<std::uint64_t> seed;
  bool quiet = false;

  auto* generate = app.add_subcommand("generate", "generate a synthetic dataset");
  generate->add_option("genspec", genspec_path, "generator spec (JSON)")->required();
  generate->add_option("outdir", outdir, "output directory")->required();
  generate->add_option("--seed", seed, "override the spec's seed");
  generate->add_flag("--quiet", quiet, "suppress progress output");

  auto* run = app.add_subcommand("run", "run an experiment (grid) and write result files");
  run->add_option("config", config_path, "experiment config (JSON)")->required();
  run->add_option("outdir", outdir, "output directory")->required();
  run->add_option("--seed", seed, "override the config's seed list");
  run->add_flag("--quiet", quiet, "suppress progress output");

  auto* summarize = app.add_subcommand("summarize", "tabulate summary.csv files under a directory");
  summarize->add_option("outdir", summary_root, "directory written by run")->required();
  summarize->add_flag("--quiet", quiet, "accepted for symmetry; no effect");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      fairsim::GenSpec spec = fairsim::load_genspec(genspec_path);
      if (seed) spec.seed = *seed;
      fairsim::generate_to_dir(spec, outdir, quiet);
    } else if (run->parsed()) {
      const auto plan = fairsim::load_experiment(config_path);
      fairsim::RunnerOptions options;
      options.seed_override = seed;
      options.quiet = quiet;
      fairsim::run_to_dir(plan, outdir, options);
    } else if (summarize->parsed()) {
      std::cout << fairsim::summarize_dir(summary_root);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
