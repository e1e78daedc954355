#pragma once

#include "gapqp/physcore/errors.hpp"

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace gapqp {

/// Malformed measurement input (names the offending row).
class DataError : public Error {
public:
    using Error::Error;
};

enum class SeriesKind { T1, T2star, T2echo };

std::string to_string(SeriesKind kind);

struct DataPoint {
    double T_K = 0.0;
    double value_s = 0.0;  // time constant in seconds
    std::optional<double> sigma_s;
};

struct DataSeries {
    SeriesKind kind = SeriesKind::T1;
    std::vector<DataPoint> points;

    /// T > 0, values > 0, sigmas > 0 when present (all or none).
    void validate() const;
    [[nodiscard]] bool has_sigma() const;
    [[nodiscard]] double min_T() const;
    [[nodiscard]] double max_T() const;
    /// Points sorted by (T, value, sigma); fits start from this order.
    [[nodiscard]] DataSeries canonical() const;
};

/// CSV with header "T_K,value_us[,sigma_us]" or "T_K,rate_per_s[,sigma_per_s]".
/// Rates are stored as times; their sigma is propagated to first order.
DataSeries read_series_csv(std::istream& in, SeriesKind kind);
DataSeries read_series_csv_file(const std::string& path, SeriesKind kind);

void write_series_csv(std::ostream& out, const DataSeries& series);

}  // namespace gapqp
