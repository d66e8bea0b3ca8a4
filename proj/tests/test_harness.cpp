#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "jacobilab/experiments.hpp"

using namespace jacobilab;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

const char* kBaseConfig = R"(
[params]
alpha = 1.25
beta = 0.25
r0 = 1.05

[grids]
t_max = 8
lambda_max = 24
radial_panels_per_unit = 5
radial_nodes_per_panel = 8
spectral_panels_per_unit = 5
spectral_nodes_per_panel = 8

[experiment]
name = lorentz-norms
r_schedule = 4,8,16,24
out_dir = /tmp/jacobilab_test_out
)";

}  // namespace

TEST_CASE("config: parse, defaults, canonical hash") {
  const ExperimentConfig cfg = parse_config_text(kBaseConfig);
  CHECK(cfg.alpha == 1.25);
  CHECK(cfg.name == "lorentz-norms");
  CHECK(cfg.parsed_r_schedule() == std::vector<double>{4.0, 8.0, 16.0, 24.0});
  CHECK(cfg.hash() == parse_config_text(kBaseConfig).hash());
  ExperimentConfig other = cfg;
  other.bump_sigma = 0.5;
  CHECK(other.hash() != cfg.hash());
}

TEST_CASE("config: log-spaced schedule") {
  ExperimentConfig cfg = parse_config_text(kBaseConfig);
  cfg.r_schedule = "log:0.5:24:10";
  const auto sched = cfg.parsed_r_schedule();
  REQUIRE(sched.size() == 10);
  CHECK(sched.front() == doctest::Approx(0.5));
  CHECK(sched.back() == doctest::Approx(24.0));
  for (std::size_t i = 1; i < sched.size(); ++i)
    CHECK(sched[i] / sched[i - 1] == doctest::Approx(sched[1] / sched[0]).epsilon(1e-12));
}

TEST_CASE("config: validation failures name the offending key") {
  auto expect_fail = [](const std::string& mutation, const std::string& needle) {
    std::string text = kBaseConfig;
    text += "\n" + mutation + "\n";
    try {
      (void)parse_config_text(text);
      FAIL_CHECK("expected ConfigError for: " << mutation);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_fail("[params]\nalpha = 0.1\nbeta = 0.4", "alpha");
  expect_fail("[params]\nbeta = -0.9", "beta");
  expect_fail("[params]\nr0 = 0.5", "R0");
  expect_fail("[grids]\nt_max = -1", "t_max");
  expect_fail("[experiment]\np = 2.5", "p");
  expect_fail("[experiment]\nfunction = sawtooth", "function");
  expect_fail("[params]\nnonsense_key = 1", "nonsense_key");
  expect_fail("[experiment]\nr_schedule = 5,4", "r_schedule");
  expect_fail("[experiment]\nthreads = 0", "threads");
}

TEST_CASE("config: unknown section and malformed lines") {
  CHECK_THROWS_AS((void)parse_config_text("[bogus]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config_text("[params]\nalpha\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config_text("alpha = 1\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config_text("[params]\nalpha = abc\n"), ConfigError);
}

TEST_CASE("registry: names and listing") {
  const auto& reg = experiment_registry();
  REQUIRE(reg.size() == 8);
  const std::string listing = list_experiments();
  for (const char* name : {"phi-cross-check", "c-asymptotics", "hc-gangolli", "plancherel",
                           "convergence-sweep", "kernel-bounds", "endpoint-growth",
                           "lorentz-norms"})
    CHECK(listing.find(name) != std::string::npos);
  ExperimentConfig cfg = parse_config_text(kBaseConfig);
  cfg.name = "unknown-experiment";
  CHECK_THROWS_AS((void)build_report(cfg), ConfigError);
}

TEST_CASE("run_experiment: deterministic byte-identical reruns") {
  ExperimentConfig cfg = parse_config_text(kBaseConfig);
  cfg.out_dir = "/tmp/jacobilab_test_out/det_a";
  const auto paths_a = run_experiment(cfg);
  cfg.out_dir = "/tmp/jacobilab_test_out/det_b";
  const auto paths_b = run_experiment(cfg);
  REQUIRE(paths_a.size() == paths_b.size());
  for (std::size_t i = 0; i < paths_a.size(); ++i) CHECK(slurp(paths_a[i]) == slurp(paths_b[i]));
}

TEST_CASE("run_experiment: output carries config hash, version, metadata") {
  ExperimentConfig cfg = parse_config_text(kBaseConfig);
  cfg.out_dir = "/tmp/jacobilab_test_out/meta";
  const auto paths = run_experiment(cfg);
  const std::string text = slurp(paths.front());
  CHECK(text.find("# jacobilab ") != std::string::npos);
  CHECK(text.find("# config_hash: ") != std::string::npos);
  char hex[32];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(cfg.hash()));
  CHECK(text.find(hex) != std::string::npos);
  // every data row ends with the hash column
  std::istringstream lines(text);
  std::string line;
  bool in_data = false;
  while (std::getline(lines, line)) {
    if (line.rfind("case,", 0) == 0) {
      in_data = true;
      continue;
    }
    if (in_data && !line.empty()) CHECK(line.find(hex) != std::string::npos);
  }
}

TEST_CASE("experiment report: row width enforcement") {
  ExperimentReport rep;
  rep.columns = {"a", "b"};
  CHECK_THROWS_AS(rep.add_row({1.0}), Error);
  rep.add_row({1.0, 2.0});
  CHECK(rep.rows.size() == 1);
}

TEST_CASE("plancherel experiment passes its embedded assertions at small scale") {
  ExperimentConfig cfg = parse_config_text(kBaseConfig);
  cfg.name = "plancherel";
  cfg.t_max = 10.0;
  cfg.lambda_max = 40.0;
  cfg.radial_panels_per_unit = 6;
  cfg.radial_nodes_per_panel = 10;
  cfg.spectral_panels_per_unit = 5;
  cfg.spectral_nodes_per_panel = 10;
  const ExperimentReport rep = build_report(cfg);
  CHECK(rep.meta_number("max_kappa_deviation") < 1e-3);
  CHECK(rep.meta_number("max_ratio_deviation") < 1e-3);
}

TEST_CASE("phi-cross-check experiment meets the reported-disagreement example") {
  ExperimentConfig cfg = parse_config_text(kBaseConfig);
  cfg.name = "phi-cross-check";
  cfg.alpha = 1.4;
  cfg.beta = 0.25;
  const ExperimentReport rep = build_report(cfg);
  CHECK(rep.meta_number("max_disagreement") < 1e-8);
}

TEST_CASE("run_experiment: thread count never changes the bytes") {
  ExperimentConfig cfg = parse_config_text(kBaseConfig);
  cfg.name = "plancherel";
  cfg.t_max = 10.0;
  cfg.lambda_max = 24.0;
  cfg.threads = 1;
  cfg.out_dir = "/tmp/jacobilab_test_out/th1";
  const auto one = run_experiment(cfg);
  cfg.threads = 4;
  cfg.out_dir = "/tmp/jacobilab_test_out/th4";
  const auto four = run_experiment(cfg);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(slurp(one[i]) == slurp(four[i]));
}
