#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "jacobilab/experiments.hpp"
#include "jacobilab/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"jacobilab - Jacobi transform and disc-multiplier experiment harness"};
  app.set_version_flag("--version", std::string(jacobilab::kVersion));
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run one experiment from a config file");
  std::string config_path;
  std::string out_dir;
  int threads = 0;
  run->add_option("--config", config_path, "path to the experiment config")->required();
  run->add_option("--out", out_dir, "output directory (overrides config out_dir)");
  run->add_option("--threads", threads, "worker thread count (overrides config)");

  auto* list = app.add_subcommand("list", "list registered experiments");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    std::cout << jacobilab::list_experiments();
    return 0;
  }

  try {
    jacobilab::ExperimentConfig cfg = jacobilab::load_config_file(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (threads > 0) cfg.threads = threads;
    if (const char* env = std::getenv("JACOBILAB_THREADS")) {
      const int n = std::atoi(env);
      if (n > 0) cfg.threads = n;
    }
    const auto paths = jacobilab::run_experiment(cfg);
    for (const auto& p : paths) std::cout << p << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
