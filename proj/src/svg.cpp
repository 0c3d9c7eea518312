#include "snsim/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace snsim {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 24.0;
constexpr double kTop = 42.0;
constexpr double kBottom = 54.0;

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

} // namespace

std::string render_line_chart(const LineChart& chart) {
    if (chart.xs.size() != chart.ys.size())
        throw std::invalid_argument("line chart needs equally many xs and ys");
    if (chart.xs.empty())
        throw std::invalid_argument("line chart needs at least one point");

    double x_min = *std::min_element(chart.xs.begin(), chart.xs.end());
    double x_max = *std::max_element(chart.xs.begin(), chart.xs.end());
    double y_min = std::min(0.0, *std::min_element(chart.ys.begin(), chart.ys.end()));
    double y_max = *std::max_element(chart.ys.begin(), chart.ys.end());
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) y_max = y_min + 1.0;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double y) { return kTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
        << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << coord(kWidth / 2) << "\" y=\"24\" font-family=\"sans-serif\" "
           "font-size=\"16\" text-anchor=\"middle\">" << chart.title << "</text>\n";

    // gridlines and tick labels, 5 divisions per axis
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = x_min + (x_max - x_min) * i / 5.0;
        const double fy = y_min + (y_max - y_min) * i / 5.0;
        const double px = sx(fx);
        const double py = sy(fy);
        out << "<line x1=\"" << coord(px) << "\" y1=\"" << coord(kTop) << "\" x2=\""
            << coord(px) << "\" y2=\"" << coord(kTop + plot_h)
            << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        out << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(py) << "\" x2=\""
            << coord(kLeft + plot_w) << "\" y2=\"" << coord(py)
            << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << coord(px) << "\" y=\"" << coord(kTop + plot_h + 16)
            << "\" text-anchor=\"middle\">" << tick_label(fx) << "</text>\n";
        out << "<text x=\"" << coord(kLeft - 8) << "\" y=\"" << coord(py + 4)
            << "\" text-anchor=\"end\">" << tick_label(fy) << "</text>\n";
    }
    out << "</g>\n";

    // axes
    out << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(kTop) << "\" x2=\""
        << coord(kLeft) << "\" y2=\"" << coord(kTop + plot_h)
        << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    out << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(kTop + plot_h)
        << "\" x2=\"" << coord(kLeft + plot_w) << "\" y2=\"" << coord(kTop + plot_h)
        << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << coord(kLeft + plot_w / 2) << "\" y=\""
        << coord(kHeight - 12) << "\" font-family=\"sans-serif\" font-size=\"13\" "
           "text-anchor=\"middle\">" << chart.x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << coord(kTop + plot_h / 2)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 18 " << coord(kTop + plot_h / 2) << ")\">"
        << chart.y_label << "</text>\n";

    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < chart.xs.size(); ++i) {
        if (i) out << ' ';
        out << coord(sx(chart.xs[i])) << ',' << coord(sy(chart.ys[i]));
    }
    out << "\"/>\n</svg>\n";
    return out.str();
}

} // namespace snsim
