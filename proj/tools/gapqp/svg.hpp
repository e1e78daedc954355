#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gapqp::cli {

struct Axis {
    std::string label;
    bool log = false;
};

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool line = true;
    bool markers = false;
};

struct LinePlot {
    std::string title;
    Axis x;
    Axis y;
    std::vector<Series> series;
};

/// Axes, ticks, one polyline and/or marker set per series, and a legend.
/// Non-finite points (and non-positive ones on log axes) are skipped.
std::string render_svg(const LinePlot& plot);

struct Heatmap {
    std::string title;
    Axis x;  // columns of `values` run along y, rows along x
    Axis y;
    std::vector<double> x_values;  // one per row
    std::vector<double> y_values;  // one per column
    std::vector<double> values;    // row-major, x_values.size() * y_values.size()
};

/// Rows are averaged into at most `max_rows` bins to keep files small.
std::string render_heatmap(const Heatmap& map, std::size_t max_rows = 400);

}  // namespace gapqp::cli
