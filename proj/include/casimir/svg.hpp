#pragma once

#include <string>
#include <vector>

namespace casimir {

struct SvgSeries {
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool line = true;
  bool markers = false;
};

struct SvgPlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;  // plots |y| when set
  int width = 800;
  int height = 600;
};

// Self-contained SVG line/scatter plot; no plotting dependency.
void write_svg_plot(const std::string& path,
                    const std::vector<SvgSeries>& series,
                    const SvgPlotOptions& options);

}  // namespace casimir
