#pragma once

#include <string>
#include <vector>

namespace snsim {

/// Static single-series line chart, no external renderer.
struct LineChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<double> xs;
    std::vector<double> ys;
};

/// Render to a standalone SVG document. Deterministic for equal input.
std::string render_line_chart(const LineChart& chart);

} // namespace snsim
