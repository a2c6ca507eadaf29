#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "robin/commands.hpp"
#include "robin/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Bayesian inversion of Robin boundary coefficients"};
  app.require_subcommand(1);

  std::string config_path, out_dir, dataset_path, chain_path, suite = "all";

  auto* simulate = app.add_subcommand("simulate", "generate a synthetic dataset");
  simulate->add_option("--config", config_path, "config file (JSON)")->required();
  simulate->add_option("--out", out_dir, "output directory (default: config's output field)");

  auto* sample = app.add_subcommand("sample", "run the MCMC sampler");
  sample->add_option("--config", config_path, "config file (JSON)")->required();
  sample->add_option("--out", out_dir, "output directory");
  sample->add_option("--data", dataset_path, "dataset file (default: <out>/dataset.json)");

  auto* analyze = app.add_subcommand("analyze", "summarize a chain");
  analyze->add_option("--config", config_path, "config file (JSON)")->required();
  analyze->add_option("--out", out_dir, "output directory");
  analyze->add_option("--chain", chain_path, "chain CSV (default: <out>/chain.csv)");
  analyze->add_option("--data", dataset_path, "dataset file (default: <out>/dataset.json)");

  auto* verify = app.add_subcommand("verify", "run the built-in verification suites");
  verify->add_option("--suite", suite, "fem | prior | mcmc | all");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return robin::cli::cmd_verify(suite);

    const auto config = robin::cli::load_config(config_path);
    const std::string out = out_dir.empty() ? config.output : out_dir;
    if (simulate->parsed()) return robin::cli::cmd_simulate(config, out);
    if (sample->parsed()) return robin::cli::cmd_sample(config, out, dataset_path);
    if (analyze->parsed()) return robin::cli::cmd_analyze(config, out, chain_path, dataset_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
