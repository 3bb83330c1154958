#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "fclust/config.hpp"
#include "fclust/study.hpp"

namespace {

struct CommonOptions {
  std::string config;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
  std::string preset;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config, "Config file of `key = value` lines");
  cmd->add_option("--out", opts.out, "Output directory")->capture_default_str();
  cmd->add_option("--seed", opts.seed, "Base seed; overrides the config");
  cmd->add_option("--workers", opts.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--preset", opts.preset, "default, supp-noise, supp-py or smoke; ignored with --config");
}

fclust::ExperimentConfig resolve(const CommonOptions& opts) {
  fclust::ExperimentConfig cfg = opts.config.empty()
                                     ? fclust::preset_config(opts.preset.empty() ? "default" : opts.preset)
                                     : fclust::load_experiment_config(opts.config);
  if (opts.seed) cfg.seed = *opts.seed;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian functional clustering with correlated-error models"};
  app.require_subcommand(1);

  CommonOptions sim_opts, fit_opts, agg_opts, theory_opts;
  CLI::App* sim = app.add_subcommand("simulate", "Generate the simulated datasets");
  add_common(sim, sim_opts);
  CLI::App* fit = app.add_subcommand("fit", "Fit every method to every dataset and write results.csv");
  add_common(fit, fit_opts);
  CLI::App* agg = app.add_subcommand("aggregate", "Summarize results.csv per method, design and m");
  add_common(agg, agg_opts);
  std::string results_path;
  agg->add_option("--results", results_path, "Results file or directory; defaults to --out");
  CLI::App* theory = app.add_subcommand("theory", "Run the theory lab and write theory.csv");
  add_common(theory, theory_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      const auto paths = fclust::cmd_simulate(resolve(sim_opts), sim_opts.out, sim_opts.workers);
      std::cout << "wrote " << paths.size() << " datasets under " << sim_opts.out << "/datasets\n";
    } else if (*fit) {
      const auto rows = fclust::cmd_fit(resolve(fit_opts), fit_opts.out, fit_opts.workers);
      std::size_t failed = 0;
      for (const auto& r : rows) failed += r.failed ? 1 : 0;
      std::cout << "wrote " << rows.size() << " rows (" << failed << " failed) to " << fit_opts.out
                << "/results.csv\n";
      return failed == 0 ? 0 : 3;
    } else if (*agg) {
      std::size_t expected = 0;
      if (!agg_opts.config.empty() || !agg_opts.preset.empty()) expected = resolve(agg_opts).replicates;
      const auto summary =
          fclust::cmd_aggregate(results_path.empty() ? agg_opts.out : results_path, agg_opts.out, expected);
      std::cout << "wrote " << summary.size() << " summary rows to " << agg_opts.out << "/summary.csv\n";
    } else if (*theory) {
      const auto rows = fclust::cmd_theory(resolve(theory_opts), theory_opts.out);
      std::cout << "wrote " << rows.size() << " rows to " << theory_opts.out << "/theory.csv\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
