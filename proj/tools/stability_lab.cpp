// stability-lab <subcommand> [--config FILE] [--seed N] [--out DIR] [--tolerance X]
#include <iostream>

#include <CLI11.hpp>

#include "stablab/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Experiments on sofic approximations, IRS limits and full groups"};
  app.require_subcommand(1);

  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::string out_dir;
  std::vector<std::string> extra;

  for (const auto& name : stablab::experiment_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_file, "key=value file; flags override it")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "base RNG seed");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--tolerance", tolerance, "numeric tolerance");
    sub->add_option("--param,-p", extra, "extra parameter key=value")->allow_extra_args(false);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    stablab::ExperimentConfig config;
    if (!config_file.empty()) config = stablab::ExperimentConfig::from_file(config_file);
    if (!config.experiment.empty() && config.experiment != name) {
      throw stablab::UsageError("experiment", "config is for " + config.experiment + ", not " + name);
    }
    config.experiment = name;
    for (const auto& kv : extra) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw stablab::UsageError("param", "expected key=value, got \"" + kv + "\"");
      config.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed) config.seed = seed;
    if (tolerance) config.tolerance = tolerance;
    if (!out_dir.empty()) config.out_dir = out_dir;
    return stablab::run(config, std::cout);
  } catch (const stablab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
