#ifndef JACOBILAB_REPORT_HPP
#define JACOBILAB_REPORT_HPP

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "jacobilab/grids.hpp"

namespace jacobilab {

// Tabular experiment output. Serialized as CSV with '#'-prefixed metadata
// lines, 17-significant-digit floats, and the config hash on every row, so
// reruns with identical configs are byte-identical.
struct ExperimentReport {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;  // insertion order
  // Plot-ready long-format samples: (series, x, y).
  std::vector<std::tuple<std::string, double, double>> plots;

  void add_row(std::vector<double> row);
  void set_meta(const std::string& key, const std::string& value);
  void set_meta(const std::string& key, double value);
  void add_plot(const std::string& series, double x, double y);
  double meta_number(const std::string& key) const;  // parses a numeric entry
};

// 17-significant-digit formatting used for every float that reaches a file;
// round-trips doubles exactly.
std::string format_double(double x);

std::string report_to_csv(const ExperimentReport& report, std::uint64_t config_hash,
                          const std::string& version);
std::string plots_to_csv(const ExperimentReport& report, std::uint64_t config_hash,
                         const std::string& version);

void write_text_file(const std::string& path, const std::string& contents);

// GridFunction / Spectrum serialization: header row
// node,weight,value_re,value_im at full precision; exact round trip.
std::string grid_function_to_csv(const GridFunction& f);
GridFunction grid_function_from_csv(const std::string& text);
std::string spectrum_to_csv(const Spectrum& f);
Spectrum spectrum_from_csv(const std::string& text);

}  // namespace jacobilab

#endif
