#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace chanpred {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  // plotted on a log axis; values must be positive
};

// Log-y line plot: one polyline per series, legend, axis labels and tick
// marks. Output is deterministic for fixed input.
void write_line_plot_svg(const std::vector<SvgSeries>& series,
                         const std::string& x_label, const std::string& y_label,
                         const std::filesystem::path& path);

}  // namespace chanpred
