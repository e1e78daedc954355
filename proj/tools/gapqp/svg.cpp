#include "svg.hpp"

#include "gapqp/physcore/errors.hpp"
#include "gapqp/physcore/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace gapqp::cli {

namespace {

constexpr double width = 720.0;
constexpr double height = 480.0;
constexpr double left = 80.0;
constexpr double right = 150.0;
constexpr double top = 40.0;
constexpr double bottom = 60.0;

const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Scale {
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;
    double pixel_lo = 0.0;
    double pixel_hi = 1.0;

    [[nodiscard]] double map(double v) const {
        const double t = log ? (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo))
                             : (v - lo) / (hi - lo);
        return pixel_lo + t * (pixel_hi - pixel_lo);
    }
};

bool usable(double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); }

Scale make_scale(const std::vector<const std::vector<double>*>& data, bool log, double p0, double p1) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto* values : data) {
        for (double v : *values) {
            if (usable(v, log)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    if (!std::isfinite(lo)) {
        lo = log ? 1.0 : 0.0;
        hi = log ? 10.0 : 1.0;
    }
    if (log) {
        lo = std::pow(10.0, std::floor(std::log10(lo)));
        hi = std::pow(10.0, std::ceil(std::log10(hi)));
        if (hi <= lo) {
            hi = lo * 10.0;
        }
    } else {
        if (hi <= lo) {
            const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.05;
            lo -= pad;
            hi += pad;
        }
        const double pad = 0.04 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
    return {lo, hi, log, p0, p1};
}

std::vector<double> ticks(const Scale& s) {
    std::vector<double> out;
    if (s.log) {
        for (double v = s.lo; v <= s.hi * 1.0000001; v *= 10.0) {
            out.push_back(v);
        }
        return out;
    }
    const double raw = (s.hi - s.lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    }
    for (double v = std::ceil(s.lo / step) * step; v <= s.hi; v += step) {
        out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    }
    return out;
}

void frame(std::ostringstream& svg, const std::string& title, const Axis& xa, const Axis& ya,
           const Scale& xs, const Scale& ys) {
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << num(width / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(title) << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width - left - right
        << "\" height=\"" << height - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ticks(xs)) {
        const double px = xs.map(t);
        svg << "<line x1=\"" << num(px) << "\" y1=\"" << height - bottom << "\" x2=\"" << num(px)
            << "\" y2=\"" << height - bottom + 5 << "\" stroke=\"black\"/>"
            << "<text x=\"" << num(px) << "\" y=\"" << height - bottom + 18
            << "\" text-anchor=\"middle\">" << format_number(t, 4) << "</text>\n";
    }
    for (double t : ticks(ys)) {
        const double py = ys.map(t);
        svg << "<line x1=\"" << left - 5 << "\" y1=\"" << num(py) << "\" x2=\"" << left << "\" y2=\""
            << num(py) << "\" stroke=\"black\"/>"
            << "<text x=\"" << left - 8 << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">"
            << format_number(t, 4) << "</text>\n";
    }
    svg << "<text x=\"" << num((left + width - right) / 2) << "\" y=\"" << height - 15
        << "\" text-anchor=\"middle\">" << escape(xa.label) << "</text>\n";
    svg << "<text transform=\"translate(18 " << num((top + height - bottom) / 2)
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape(ya.label) << "</text>\n";
}

}  // namespace

std::string render_svg(const LinePlot& plot) {
    std::vector<const std::vector<double>*> xs_data;
    std::vector<const std::vector<double>*> ys_data;
    for (const auto& s : plot.series) {
        if (s.x.size() != s.y.size()) {
            throw DomainError("series '" + s.label + "' has mismatched x and y");
        }
        xs_data.push_back(&s.x);
        ys_data.push_back(&s.y);
    }
    const Scale xs = make_scale(xs_data, plot.x.log, left, width - right);
    const Scale ys = make_scale(ys_data, plot.y.log, height - bottom, top);
    std::ostringstream svg;
    frame(svg, plot.title, plot.x, plot.y, xs, ys);
    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& s = plot.series[k];
        const char* colour = palette[k % std::size(palette)];
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (usable(s.x[i], plot.x.log) && usable(s.y[i], plot.y.log)) {
                pts << num(xs.map(s.x[i])) << ',' << num(ys.map(s.y[i])) << ' ';
            }
        }
        if (s.line) {
            svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\""
                << pts.str() << "\"/>\n";
        }
        if (s.markers) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (usable(s.x[i], plot.x.log) && usable(s.y[i], plot.y.log)) {
                    svg << "<circle cx=\"" << num(xs.map(s.x[i])) << "\" cy=\"" << num(ys.map(s.y[i]))
                        << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
                }
            }
        }
        const double ly = top + 16.0 + 18.0 * double(k);
        svg << "<line x1=\"" << width - right + 10 << "\" y1=\"" << num(ly - 4) << "\" x2=\""
            << width - right + 30 << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << colour
            << "\" stroke-width=\"2\"/><text x=\"" << width - right + 35 << "\" y=\"" << num(ly)
            << "\">" << escape(s.label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_heatmap(const Heatmap& map, std::size_t max_rows) {
    const std::size_t nx = map.x_values.size();
    const std::size_t ny = map.y_values.size();
    if (nx == 0 || ny == 0 || map.values.size() != nx * ny) {
        throw DomainError("heatmap dimensions do not match its values");
    }
    const std::size_t bins = std::min(nx, std::max<std::size_t>(max_rows, 1));
    std::vector<double> binned(bins * ny, 0.0);
    std::vector<double> bin_x(bins, 0.0);
    for (std::size_t b = 0; b < bins; ++b) {
        const std::size_t r0 = b * nx / bins;
        const std::size_t r1 = (b + 1) * nx / bins;
        for (std::size_t r = r0; r < r1; ++r) {
            for (std::size_t c = 0; c < ny; ++c) {
                binned[b * ny + c] += map.values[r * ny + c] / double(r1 - r0);
            }
        }
        bin_x[b] = map.x_values[r0];
    }
    const auto [vmin_it, vmax_it] = std::minmax_element(binned.begin(), binned.end());
    const double vmin = *vmin_it;
    const double vmax = *vmax_it > vmin ? *vmax_it : vmin + 1.0;

    const double x_last = nx > 1 ? 2.0 * map.x_values[nx - 1] - map.x_values[nx - 2] : map.x_values[0] + 1.0;
    const std::vector<double> x_extent{map.x_values.front(), x_last};
    const Scale xs = make_scale({&x_extent}, false, left, width - right);
    const Scale ys = make_scale({&map.y_values}, false, height - bottom, top);
    std::ostringstream svg;
    frame(svg, map.title, map.x, map.y, xs, ys);
    const double cell_h = std::abs(ys.map(map.y_values.back()) - ys.map(map.y_values.front())) /
                          double(std::max<std::size_t>(ny - 1, 1));
    for (std::size_t b = 0; b < bins; ++b) {
        const double x0 = xs.map(bin_x[b]);
        const double x1 = xs.map(b + 1 < bins ? bin_x[b + 1] : x_last);
        for (std::size_t c = 0; c < ny; ++c) {
            const double t = std::clamp((binned[b * ny + c] - vmin) / (vmax - vmin), 0.0, 1.0);
            // White to dark blue.
            const int red = int(255 * (1 - t) + 8 * t);
            const int green = int(255 * (1 - t) + 48 * t);
            const int blue = int(255 * (1 - t) + 107 * t);
            svg << "<rect x=\"" << num(x0) << "\" y=\"" << num(ys.map(map.y_values[c]) - cell_h / 2)
                << "\" width=\"" << num(x1 - x0 + 0.3) << "\" height=\"" << num(cell_h + 0.3)
                << "\" fill=\"rgb(" << red << ',' << green << ',' << blue << ")\"/>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace gapqp::cli
