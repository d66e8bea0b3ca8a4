#ifndef JACOBILAB_EXPERIMENTS_HPP
#define JACOBILAB_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "jacobilab/config.hpp"
#include "jacobilab/report.hpp"

namespace jacobilab {

struct ExperimentInfo {
  std::string name;
  std::string description;
};

// Registered experiments, in a fixed order.
const std::vector<ExperimentInfo>& experiment_registry();

// One line per experiment: "name - description".
std::string list_experiments();

// Builds the configured experiment's report. Pure computation; throws Error
// when an embedded assertion fails (message carries the assertion).
ExperimentReport build_report(const ExperimentConfig& cfg);

// build_report + CSV emission into cfg.out_dir (report and plot files).
// Returns the paths written.
std::vector<std::string> run_experiment(const ExperimentConfig& cfg);

}  // namespace jacobilab

#endif
