#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gapqp {

struct PeakOptions {
    double k = 5.0;              // threshold = median + k * MAD
    std::size_t max_peaks = 2;
};

struct PeakDetection {
    std::size_t count = 0;
    std::vector<double> positions_GHz;  // ascending
    std::vector<double> heights;
    double threshold = 0.0;
};

/// Local maxima above median + k * MAD, merged when closer than one linewidth
/// (the taller survives), keeping at most max_peaks. MAD is scaled by 1.4826 so
/// that k counts Gaussian standard deviations.
PeakDetection detect_peaks(std::span<const double> row, std::span<const double> frequencies_GHz,
                           double linewidth_MHz, const PeakOptions& options = {});

}  // namespace gapqp
