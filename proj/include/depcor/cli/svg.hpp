#pragma once

#include <span>
#include <string>
#include <vector>

namespace depcor::cli {

struct ScatterPanel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Panels laid out side by side, each with linear axes padded by 5% of the
/// data range and one fixed-radius circle per point.
std::string render_scatter_svg(std::span<const ScatterPanel> panels);

}  // namespace depcor::cli
