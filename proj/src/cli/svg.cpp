#include "depcor/cli/svg.hpp"

#include "depcor/error.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace depcor::cli {

namespace {

constexpr double kPanelWidth = 420.0;
constexpr double kPanelHeight = 420.0;
constexpr double kPlotLeft = 60.0;
constexpr double kPlotTop = 40.0;
constexpr double kPlotSize = 320.0;
constexpr double kPointRadius = 2.5;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo, hi;
};

Range padded(const std::vector<double>& v) {
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  double lo = *mn, hi = *mx;
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

std::string render_scatter_svg(std::span<const ScatterPanel> panels) {
  if (panels.empty()) throw UsageError("svg: no panels");
  std::ostringstream os;
  const double width = kPanelWidth * static_cast<double>(panels.size());
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(kPanelHeight)
     << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(kPanelHeight) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const ScatterPanel& panel = panels[p];
    if (panel.x.size() != panel.y.size() || panel.x.empty()) throw UsageError("svg: panel needs equal, nonempty x/y");
    const double ox = kPanelWidth * static_cast<double>(p) + kPlotLeft;
    const double oy = kPlotTop;
    const Range rx = padded(panel.x);
    const Range ry = padded(panel.y);
    auto sx = [&](double v) { return ox + (v - rx.lo) / (rx.hi - rx.lo) * kPlotSize; };
    auto sy = [&](double v) { return oy + kPlotSize - (v - ry.lo) / (ry.hi - ry.lo) * kPlotSize; };

    os << "<g class=\"panel\">\n";
    os << "<text x=\"" << fmt(ox + kPlotSize / 2) << "\" y=\"" << fmt(oy - 15)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << escape(panel.title)
       << "</text>\n";
    os << "<rect x=\"" << fmt(ox) << "\" y=\"" << fmt(oy) << "\" width=\"" << fmt(kPlotSize) << "\" height=\""
       << fmt(kPlotSize) << "\" fill=\"none\" stroke=\"black\"/>\n";
    // axis extremes
    os << "<text x=\"" << fmt(ox) << "\" y=\"" << fmt(oy + kPlotSize + 15)
       << "\" font-family=\"sans-serif\" font-size=\"10\">" << label(rx.lo) << "</text>\n";
    os << "<text x=\"" << fmt(ox + kPlotSize) << "\" y=\"" << fmt(oy + kPlotSize + 15)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << label(rx.hi) << "</text>\n";
    os << "<text x=\"" << fmt(ox - 5) << "\" y=\"" << fmt(oy + kPlotSize)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << label(ry.lo) << "</text>\n";
    os << "<text x=\"" << fmt(ox - 5) << "\" y=\"" << fmt(oy + 10)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << label(ry.hi) << "</text>\n";
    os << "<text x=\"" << fmt(ox + kPlotSize / 2) << "\" y=\"" << fmt(oy + kPlotSize + 35)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << escape(panel.x_label)
       << "</text>\n";
    os << "<text x=\"" << fmt(ox - 40) << "\" y=\"" << fmt(oy + kPlotSize / 2)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 "
       << fmt(ox - 40) << ' ' << fmt(oy + kPlotSize / 2) << ")\">" << escape(panel.y_label) << "</text>\n";
    os << "<g class=\"points\" fill=\"steelblue\" fill-opacity=\"0.7\">\n";
    for (std::size_t i = 0; i < panel.x.size(); ++i) {
      os << "<circle cx=\"" << fmt(sx(panel.x[i])) << "\" cy=\"" << fmt(sy(panel.y[i])) << "\" r=\""
         << fmt(kPointRadius) << "\"/>\n";
    }
    os << "</g>\n</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace depcor::cli
