#include "jacobilab/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "jacobilab/errors.hpp"

namespace jacobilab {

void ExperimentReport::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw Error("ExperimentReport: row width " + std::to_string(row.size()) +
                " does not match column count " + std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

void ExperimentReport::set_meta(const std::string& key, const std::string& value) {
  for (auto& kv : metadata) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  metadata.emplace_back(key, value);
}

void ExperimentReport::set_meta(const std::string& key, double value) {
  set_meta(key, format_double(value));
}

void ExperimentReport::add_plot(const std::string& series, double x, double y) {
  plots.emplace_back(series, x, y);
}

double ExperimentReport::meta_number(const std::string& key) const {
  for (const auto& kv : metadata)
    if (kv.first == key) return std::stod(kv.second);
  throw Error("ExperimentReport: no metadata entry '" + key + "'");
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string hash_hex(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

void emit_header(std::ostringstream& out, const ExperimentReport& report,
                 std::uint64_t config_hash, const std::string& version) {
  out << "# jacobilab " << version << "\n";
  out << "# experiment: " << report.name << "\n";
  out << "# config_hash: " << hash_hex(config_hash) << "\n";
  for (const auto& kv : report.metadata) out << "# " << kv.first << ": " << kv.second << "\n";
}

}  // namespace

std::string report_to_csv(const ExperimentReport& report, std::uint64_t config_hash,
                          const std::string& version) {
  std::ostringstream out;
  emit_header(out, report, config_hash, version);
  for (std::size_t c = 0; c < report.columns.size(); ++c) {
    if (c) out << ',';
    out << report.columns[c];
  }
  if (!report.columns.empty()) out << ',';
  out << "config_hash\n";
  const std::string hh = hash_hex(config_hash);
  for (const auto& row : report.rows) {
    for (double v : row) out << format_double(v) << ',';
    out << hh << "\n";
  }
  return out.str();
}

std::string plots_to_csv(const ExperimentReport& report, std::uint64_t config_hash,
                         const std::string& version) {
  std::ostringstream out;
  emit_header(out, report, config_hash, version);
  out << "experiment,series,x,y\n";
  for (const auto& [series, x, y] : report.plots)
    out << report.name << ',' << series << ',' << format_double(x) << ',' << format_double(y)
        << "\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << contents;
  if (!f) throw Error("write failed for '" + path + "'");
}

std::string grid_function_to_csv(const GridFunction& f) {
  std::ostringstream out;
  out << "# t_max: " << format_double(f.grid->t_max) << "\n";
  out << "node,weight,value_re,value_im\n";
  for (std::size_t i = 0; i < f.values.size(); ++i)
    out << format_double(f.grid->nodes[i]) << ',' << format_double(f.grid->weights[i]) << ','
        << format_double(f.values[i]) << ",0\n";
  return out.str();
}

GridFunction grid_function_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto grid = std::make_shared<RadialGrid>();
  std::vector<double> values;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("t_max:");
      if (pos != std::string::npos) grid->t_max = std::stod(line.substr(pos + 6));
      continue;
    }
    if (!saw_header) {  // column header row
      saw_header = true;
      continue;
    }
    double node, weight, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &node, &weight, &re, &im) != 4)
      throw Error("grid_function_from_csv: malformed row '" + line + "'");
    grid->nodes.push_back(node);
    grid->weights.push_back(weight);
    values.push_back(re);
  }
  return GridFunction(std::move(grid), std::move(values));
}

std::string spectrum_to_csv(const Spectrum& f) {
  std::ostringstream out;
  out << "# lambda_max: " << format_double(f.grid->lambda_max) << "\n";
  out << "node,weight,value_re,value_im\n";
  for (std::size_t i = 0; i < f.values.size(); ++i)
    out << format_double(f.grid->nodes[i]) << ',' << format_double(f.grid->weights[i]) << ','
        << format_double(f.values[i]) << ",0\n";
  return out.str();
}

Spectrum spectrum_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto grid = std::make_shared<SpectralGrid>();
  std::vector<double> values;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("lambda_max:");
      if (pos != std::string::npos) grid->lambda_max = std::stod(line.substr(pos + 11));
      continue;
    }
    if (!saw_header) {
      saw_header = true;
      continue;
    }
    double node, weight, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &node, &weight, &re, &im) != 4)
      throw Error("spectrum_from_csv: malformed row '" + line + "'");
    grid->nodes.push_back(node);
    grid->weights.push_back(weight);
    values.push_back(re);
  }
  return Spectrum(std::move(grid), std::move(values));
}

}  // namespace jacobilab
