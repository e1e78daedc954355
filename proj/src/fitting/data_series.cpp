#include "gapqp/fitting/data_series.hpp"

#include "gapqp/physcore/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

namespace gapqp {

std::string to_string(SeriesKind kind) {
    switch (kind) {
        case SeriesKind::T1: return "T1";
        case SeriesKind::T2star: return "T2star";
        case SeriesKind::T2echo: return "T2echo";
    }
    return "T1";
}

void DataSeries::validate() const {
    if (points.empty()) {
        throw DataError("data series is empty");
    }
    const bool sigma = points.front().sigma_s.has_value();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        const std::string where = "point " + std::to_string(i + 1);
        if (!(p.T_K > 0.0) || !std::isfinite(p.T_K)) {
            throw DataError(where + ": temperature must be positive");
        }
        if (!(p.value_s > 0.0) || !std::isfinite(p.value_s)) {
            throw DataError(where + ": value must be positive");
        }
        if (p.sigma_s.has_value() != sigma) {
            throw DataError(where + ": sigma must be given for all points or none");
        }
        if (sigma && !(*p.sigma_s > 0.0 && std::isfinite(*p.sigma_s))) {
            throw DataError(where + ": sigma must be positive");
        }
    }
}

bool DataSeries::has_sigma() const {
    return !points.empty() && points.front().sigma_s.has_value();
}

double DataSeries::min_T() const {
    return std::min_element(points.begin(), points.end(), [](auto& a, auto& b) {
               return a.T_K < b.T_K;
           })->T_K;
}

double DataSeries::max_T() const {
    return std::max_element(points.begin(), points.end(), [](auto& a, auto& b) {
               return a.T_K < b.T_K;
           })->T_K;
}

DataSeries DataSeries::canonical() const {
    DataSeries out = *this;
    std::sort(out.points.begin(), out.points.end(), [](const DataPoint& a, const DataPoint& b) {
        return std::make_tuple(a.T_K, a.value_s, a.sigma_s.value_or(0.0)) <
               std::make_tuple(b.T_K, b.value_s, b.sigma_s.value_or(0.0));
    });
    return out;
}

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        fields.push_back(trim(field));
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

double parse_number(const std::string& text, std::size_t line_no, const std::string& column) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw DataError("row " + std::to_string(line_no) + ": column '" + column +
                        "' is not a number: '" + text + "'");
    }
    return value;
}

enum class ValueColumn { seconds, microseconds, rate };

}  // namespace

DataSeries read_series_csv(std::istream& in, SeriesKind kind) {
    DataSeries series;
    series.kind = kind;
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (header.empty() && std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (!t.empty() && t.front() != '#') {
            header = split(t);
        }
    }
    if (header.empty()) {
        throw DataError("data file is empty");
    }
    if (header.size() < 2 || header.size() > 3 || header[0] != "T_K") {
        throw DataError("row " + std::to_string(line_no) +
                        ": header must be T_K,value_us[,sigma_us] or T_K,rate_per_s[,sigma_per_s]");
    }
    ValueColumn unit;
    if (header[1] == "value_us") {
        unit = ValueColumn::microseconds;
    } else if (header[1] == "value_s") {
        unit = ValueColumn::seconds;
    } else if (header[1] == "rate_per_s") {
        unit = ValueColumn::rate;
    } else {
        throw DataError("row " + std::to_string(line_no) + ": unknown value column '" + header[1] + "'");
    }
    if (header.size() == 3) {
        const auto& s = header[2];
        const bool ok = s == "sigma" || (unit == ValueColumn::microseconds && s == "sigma_us") ||
                        (unit == ValueColumn::seconds && s == "sigma_s") ||
                        (unit == ValueColumn::rate && s == "sigma_per_s");
        if (!ok) {
            throw DataError("row " + std::to_string(line_no) + ": sigma column '" + s +
                            "' does not match the value column");
        }
    }

    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        const auto fields = split(t);
        if (fields.size() != header.size()) {
            throw DataError("row " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields, found " +
                            std::to_string(fields.size()));
        }
        DataPoint p;
        p.T_K = parse_number(fields[0], line_no, header[0]);
        const double v = parse_number(fields[1], line_no, header[1]);
        std::optional<double> s;
        if (fields.size() == 3) {
            s = parse_number(fields[2], line_no, header[2]);
        }
        if (!(v > 0.0)) {
            throw DataError("row " + std::to_string(line_no) + ": value must be positive");
        }
        switch (unit) {
            case ValueColumn::seconds:
                p.value_s = v;
                p.sigma_s = s;
                break;
            case ValueColumn::microseconds:
                p.value_s = v * 1e-6;
                if (s) {
                    p.sigma_s = *s * 1e-6;
                }
                break;
            case ValueColumn::rate:
                p.value_s = 1.0 / v;
                if (s) {
                    p.sigma_s = *s / (v * v);
                }
                break;
        }
        try {
            DataSeries single{kind, {p}};
            single.validate();
        } catch (const DataError& e) {
            std::string msg = e.what();
            throw DataError("row " + std::to_string(line_no) + msg.substr(msg.find(':')));
        }
        series.points.push_back(p);
    }
    if (series.points.empty()) {
        throw DataError("data file has a header but no rows");
    }
    return series;
}

DataSeries read_series_csv_file(const std::string& path, SeriesKind kind) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open data file '" + path + "'");
    }
    return read_series_csv(in, kind);
}

void write_series_csv(std::ostream& out, const DataSeries& series) {
    out << "T_K,value_us" << (series.has_sigma() ? ",sigma_us" : "") << '\n';
    for (const auto& p : series.points) {
        out << format_number(p.T_K) << ',' << format_number(p.value_s * 1e6);
        if (p.sigma_s) {
            out << ',' << format_number(*p.sigma_s * 1e6);
        }
        out << '\n';
    }
}

}  // namespace gapqp
