#include "jacobilab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "jacobilab/numeric.hpp"
#include "jacobilab/report.hpp"

namespace jacobilab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has non-numeric value '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_number(key, value);
  if (v != std::floor(v)) throw ConfigError("config: key '" + key + "' must be an integer");
  return static_cast<int>(v);
}

}  // namespace

JacobiParams ExperimentConfig::params() const {
  try {
    return JacobiParams(alpha, beta, r0);
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

std::vector<double> ExperimentConfig::parsed_r_schedule() const {
  std::vector<double> out;
  if (r_schedule.rfind("log:", 0) == 0) {
    std::istringstream in(r_schedule.substr(4));
    std::string lo_s, hi_s, n_s;
    if (!std::getline(in, lo_s, ':') || !std::getline(in, hi_s, ':') || !std::getline(in, n_s))
      throw ConfigError("config: key 'r_schedule' malformed; want log:lo:hi:n");
    const double lo = parse_number("r_schedule", lo_s);
    const double hi = parse_number("r_schedule", hi_s);
    const int n = parse_int("r_schedule", n_s);
    if (!(lo > 0.0 && hi > lo && n >= 2))
      throw ConfigError("config: key 'r_schedule' needs 0 < lo < hi and n >= 2");
    for (int i = 0; i < n; ++i)
      out.push_back(std::exp(std::log(lo) +
                             (std::log(hi) - std::log(lo)) * i / static_cast<double>(n - 1)));
  } else {
    std::istringstream in(r_schedule);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_number("r_schedule", trim(item)));
    if (out.empty()) throw ConfigError("config: key 'r_schedule' is empty");
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (!(out[i] > out[i - 1]))
      throw ConfigError("config: key 'r_schedule' must be strictly increasing");
  if (out.back() > lambda_max + 1e-12)
    throw ConfigError("config: key 'r_schedule' exceeds lambda_max");
  return out;
}

std::string ExperimentConfig::canonical_text() const {
  std::ostringstream out;
  out << "[params]\n";
  out << "alpha = " << format_double(alpha) << "\n";
  out << "beta = " << format_double(beta) << "\n";
  out << "r0 = " << format_double(r0) << "\n";
  out << "[grids]\n";
  out << "t_max = " << format_double(t_max) << "\n";
  out << "lambda_max = " << format_double(lambda_max) << "\n";
  out << "radial_panels_per_unit = " << radial_panels_per_unit << "\n";
  out << "radial_nodes_per_panel = " << radial_nodes_per_panel << "\n";
  out << "spectral_panels_per_unit = " << spectral_panels_per_unit << "\n";
  out << "spectral_nodes_per_panel = " << spectral_nodes_per_panel << "\n";
  out << "[experiment]\n";
  out << "name = " << name << "\n";
  out << "p = " << format_double(p) << "\n";
  out << "r_schedule = " << r_schedule << "\n";
  out << "function = " << function << "\n";
  out << "bump_t0 = " << format_double(bump_t0) << "\n";
  out << "bump_sigma = " << format_double(bump_sigma) << "\n";
  out << "indicator_lo = " << format_double(indicator_lo) << "\n";
  out << "indicator_hi = " << format_double(indicator_hi) << "\n";
  out << "seed = " << seed << "\n";
  out << "[tolerances]\n";
  out << "phi_route_tol = " << format_double(phi_route_tol) << "\n";
  out << "kappa_tol = " << format_double(kappa_tol) << "\n";
  return out.str();
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a64(canonical_text()); }

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = t.substr(1, t.size() - 2);
      if (section != "params" && section != "grids" && section != "experiment" &&
          section != "tolerances")
        throw ConfigError("config: unknown section '" + section + "' at line " +
                          std::to_string(lineno));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError("config: empty key at line " + std::to_string(lineno));

    if (section == "params") {
      if (key == "alpha") cfg.alpha = parse_number(key, value);
      else if (key == "beta") cfg.beta = parse_number(key, value);
      else if (key == "r0") cfg.r0 = parse_number(key, value);
      else throw ConfigError("config: unknown key '" + key + "' in [params]");
    } else if (section == "grids") {
      if (key == "t_max") cfg.t_max = parse_number(key, value);
      else if (key == "lambda_max") cfg.lambda_max = parse_number(key, value);
      else if (key == "radial_panels_per_unit") cfg.radial_panels_per_unit = parse_int(key, value);
      else if (key == "radial_nodes_per_panel") cfg.radial_nodes_per_panel = parse_int(key, value);
      else if (key == "spectral_panels_per_unit")
        cfg.spectral_panels_per_unit = parse_int(key, value);
      else if (key == "spectral_nodes_per_panel")
        cfg.spectral_nodes_per_panel = parse_int(key, value);
      else throw ConfigError("config: unknown key '" + key + "' in [grids]");
    } else if (section == "experiment") {
      if (key == "name") cfg.name = value;
      else if (key == "p") cfg.p = parse_number(key, value);
      else if (key == "r_schedule") cfg.r_schedule = value;
      else if (key == "function") cfg.function = value;
      else if (key == "bump_t0") cfg.bump_t0 = parse_number(key, value);
      else if (key == "bump_sigma") cfg.bump_sigma = parse_number(key, value);
      else if (key == "indicator_lo") cfg.indicator_lo = parse_number(key, value);
      else if (key == "indicator_hi") cfg.indicator_hi = parse_number(key, value);
      else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_number(key, value));
      else if (key == "threads") cfg.threads = parse_int(key, value);
      else if (key == "out_dir") cfg.out_dir = value;
      else throw ConfigError("config: unknown key '" + key + "' in [experiment]");
    } else if (section == "tolerances") {
      if (key == "phi_route_tol") cfg.phi_route_tol = parse_number(key, value);
      else if (key == "kappa_tol") cfg.kappa_tol = parse_number(key, value);
      else throw ConfigError("config: unknown key '" + key + "' in [tolerances]");
    } else {
      throw ConfigError("config: key '" + key + "' appears before any [section]");
    }
  }

  // Validate numeric fields against module preconditions.
  (void)cfg.params();  // alpha/beta/r0
  if (!(cfg.t_max > 0.0)) throw ConfigError("config: key 't_max' must be > 0");
  if (!(cfg.lambda_max > 0.0)) throw ConfigError("config: key 'lambda_max' must be > 0");
  if (cfg.radial_panels_per_unit < 1 || cfg.spectral_panels_per_unit < 1)
    throw ConfigError("config: key 'panels_per_unit' must be >= 1");
  if (cfg.radial_nodes_per_panel < 2 || cfg.radial_nodes_per_panel > 64 ||
      cfg.spectral_nodes_per_panel < 2 || cfg.spectral_nodes_per_panel > 64)
    throw ConfigError("config: key 'nodes_per_panel' must be in [2, 64]");
  if (!(cfg.p > 1.0 && cfg.p <= 2.0))
    throw ConfigError("config: key 'p' must lie in (1, 2]");
  if (cfg.function != "bump" && cfg.function != "indicator")
    throw ConfigError("config: key 'function' must be 'bump' or 'indicator'");
  if (!(cfg.bump_sigma > 0.0)) throw ConfigError("config: key 'bump_sigma' must be > 0");
  if (!(cfg.indicator_lo >= 0.0 && cfg.indicator_hi > cfg.indicator_lo))
    throw ConfigError("config: keys 'indicator_lo'/'indicator_hi' must satisfy 0 <= lo < hi");
  if (cfg.indicator_hi >= cfg.t_max)
    throw ConfigError("config: key 'indicator_hi' must be < t_max");
  if (cfg.threads < 1) throw ConfigError("config: key 'threads' must be >= 1");
  (void)cfg.parsed_r_schedule();
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace jacobilab
