#pragma once

#include <string>
#include <vector>

namespace kpp {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotStyle {
  bool log_x = false;
  bool log_y = false;
  std::string title;
  std::string x_label;
  std::string y_label;
};

/// Self-contained 800x600 SVG with axes, ticks, and a legend; one polyline
/// per series. Output is deterministic for identical input. Non-finite
/// data, or non-positive data on a log axis, throws std::invalid_argument
/// naming the series.
std::string render_svg(const std::vector<Series>& series, const PlotStyle& style);

}  // namespace kpp
