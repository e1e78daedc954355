#include "gapqp/dynamics/peaks.hpp"

#include "gapqp/physcore/constants.hpp"
#include "gapqp/physcore/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gapqp {

namespace {

double median_of(std::vector<double> values) {
    const auto n = values.size();
    auto mid = values.begin() + std::ptrdiff_t(n / 2);
    std::nth_element(values.begin(), mid, values.end());
    if (n % 2 == 1) {
        return *mid;
    }
    return 0.5 * (*mid + *std::max_element(values.begin(), mid));
}

}  // namespace

PeakDetection detect_peaks(std::span<const double> row, std::span<const double> frequencies_GHz,
                           double linewidth_MHz, const PeakOptions& options) {
    if (row.size() != frequencies_GHz.size() || row.size() < 3) {
        throw DomainError("peak detection needs matching rows of at least three samples");
    }
    if (!(linewidth_MHz > 0.0)) {
        throw DomainError("linewidth must be positive");
    }
    const double median = median_of({row.begin(), row.end()});
    std::vector<double> deviations(row.size());
    std::transform(row.begin(), row.end(), deviations.begin(),
                   [median](double a) { return std::abs(a - median); });
    const double mad = 1.4826 * median_of(std::move(deviations));

    PeakDetection result;
    result.threshold = median + options.k * mad;

    std::vector<std::size_t> candidates;
    const auto n = row.size();
    for (std::size_t i = 0; i < n; ++i) {
        const bool rises = i == 0 || row[i] > row[i - 1];
        const bool holds = i + 1 == n || row[i] >= row[i + 1];
        if (rises && holds && row[i] > result.threshold) {
            candidates.push_back(i);
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t a, std::size_t b) { return row[a] > row[b]; });

    const double merge_GHz = linewidth_MHz / constants::mhz_per_ghz;
    std::vector<std::size_t> kept;
    for (std::size_t c : candidates) {
        const bool isolated = std::none_of(kept.begin(), kept.end(), [&](std::size_t k) {
            return std::abs(frequencies_GHz[c] - frequencies_GHz[k]) < merge_GHz;
        });
        if (isolated) {
            kept.push_back(c);
            if (kept.size() == options.max_peaks) {
                break;
            }
        }
    }
    std::sort(kept.begin(), kept.end(),
              [&](std::size_t a, std::size_t b) { return frequencies_GHz[a] < frequencies_GHz[b]; });
    for (std::size_t k : kept) {
        result.positions_GHz.push_back(frequencies_GHz[k]);
        result.heights.push_back(row[k]);
    }
    result.count = kept.size();
    return result;
}

}  // namespace gapqp
