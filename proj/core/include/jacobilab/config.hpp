#ifndef JACOBILAB_CONFIG_HPP
#define JACOBILAB_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "jacobilab/jacobi.hpp"

namespace jacobilab {

// Flat key = value configuration with [section] headers. Unknown keys are
// rejected at load time; numeric fields are validated against the module
// preconditions; error messages name the offending key.
struct ExperimentConfig {
  // [params]
  double alpha = 1.4;
  double beta = 0.25;
  double r0 = 1.05;

  // [grids]
  double t_max = 12.0;
  double lambda_max = 60.0;
  int radial_panels_per_unit = 8;
  int radial_nodes_per_panel = 12;
  int spectral_panels_per_unit = 6;
  int spectral_nodes_per_panel = 12;

  // [experiment]
  std::string name;
  double p = 2.0;
  std::string r_schedule = "log:0.5:60:48";  // "log:lo:hi:n" or comma list
  std::string function = "bump";             // bump | indicator
  double bump_t0 = 3.0;
  double bump_sigma = 1.0;
  double indicator_lo = 1.0;
  double indicator_hi = 2.0;
  std::uint64_t seed = 20260807;
  int threads = 1;
  std::string out_dir = "out";

  // [tolerances]
  double phi_route_tol = 1e-6;
  double kappa_tol = 1e-3;

  JacobiParams params() const;                  // validates alpha/beta/r0
  std::vector<double> parsed_r_schedule() const;
  std::string canonical_text() const;           // deterministic serialization
  std::uint64_t hash() const;                   // FNV-1a of canonical text
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

}  // namespace jacobilab

#endif
