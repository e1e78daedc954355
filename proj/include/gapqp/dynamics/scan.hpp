#pragma once

#include "gapqp/dynamics/telegraph.hpp"
#include "gapqp/transmon/transmon.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace gapqp {

struct ScanConfig {
    double duration_s = 1000.0;
    double pixel_time_s = 0.2;
    int repetitions = 100;
    /// Explicit frequency grid; when absent the grid spans every visited branch
    /// plus `margin_linewidths` on each side with `points_per_linewidth` sampling.
    std::optional<double> f_min_GHz;
    std::optional<double> f_max_GHz;
    std::size_t n_freq = 0;
    double margin_linewidths = 15.0;
    double points_per_linewidth = 4.0;
    std::size_t max_points = 4001;
};

/// Ground truth attached to each pixel: the offset charge dwelling longest in
/// the window, its predicted branch frequencies, and the odd-parity dwell fraction.
struct PixelBranches {
    double ng = 0.0;
    double f_even_GHz = 0.0;
    double f_odd_GHz = 0.0;
    double odd_fraction = 0.0;
};

struct SpectroscopyScan {
    std::vector<double> frequencies_GHz;
    std::vector<double> times_s;         // pixel start times
    std::vector<double> amplitudes;      // row-major, one row per pixel
    std::vector<PixelBranches> branches; // per pixel
    double pixel_time_s = 0.2;
    int repetitions = 100;
    double linewidth_MHz = 1.0;
    double snr = 0.0;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t pixels() const { return times_s.size(); }
    [[nodiscard]] std::size_t columns() const { return frequencies_GHz.size(); }
    [[nodiscard]] std::span<const double> row(std::size_t pixel) const;
    [[nodiscard]] double duration_s() const { return pixel_time_s * double(pixels()); }
};

/// Lorentzian (FWHM linewidth) response averaged over each pixel window, with
/// each branch weighted by its exact dwell time, plus white noise of standard
/// deviation 1/snr (snr = inf disables noise). Branch frequencies come from
/// parity_frequencies(). Throws CoverageError when an explicit grid misses a
/// visited branch.
SpectroscopyScan synthesize_scan(const TransmonParams& params, const ParityTrace& parity,
                                 const OffsetChargeTrace& offset, double linewidth_MHz, double snr,
                                 const ScanConfig& config, std::uint64_t seed);

/// One row per pixel: "t_s,<f_1>,...,<f_n>" header with frequencies in GHz.
void write_scan_csv(std::ostream& out, const SpectroscopyScan& scan);

/// Axes, metadata and amplitudes as a JSON document.
nlohmann::json scan_to_json(const SpectroscopyScan& scan, const nlohmann::json& metadata = {});

}  // namespace gapqp
