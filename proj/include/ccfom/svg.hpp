#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ccfom {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> measured;  // (k, f(x_k) − f̄)
  std::vector<std::pair<double, double>> bound;     // (k, closed-form bound), drawn dashed
};

/// Log-log plot, 800x600. Non-positive coordinates are dropped.
void write_svg(std::ostream& out, const std::vector<PlotSeries>& series, const std::string& title);

}  // namespace ccfom
