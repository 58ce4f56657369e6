#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qliang {

class PlotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Strict CSV reader for the flow schema: header plus numeric rows, all of
/// equal width. Throws PlotError on anything else.
CsvTable read_csv(const std::string& path);

/// Multi-series SVG line plot: first column is the x axis ("t"), remaining
/// columns become series labeled from the header; y axis is "bits".
void plot_csv_to_svg(const std::string& csv_path, const std::string& svg_path);

}  // namespace qliang
