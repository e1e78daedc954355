#include "gapqp/dynamics/lifetime.hpp"

#include "gapqp/physcore/constants.hpp"
#include "gapqp/physcore/errors.hpp"
#include "gapqp/physcore/format.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace gapqp {

std::string to_string(LifetimeKind kind) {
    switch (kind) {
        case LifetimeKind::upper_bound: return "upper bound";
        case LifetimeKind::lower_bound: return "lower bound";
        case LifetimeKind::point_estimate: return "point estimate";
        case LifetimeKind::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::string LifetimeEstimate::describe() const {
    switch (kind) {
        case LifetimeKind::upper_bound:
            return "upper bound " + format_number(value_s, 6) + " s, two-branch";
        case LifetimeKind::lower_bound:
            return "lower bound " + format_number(value_s, 6) + " s, single-branch";
        case LifetimeKind::point_estimate:
            return "point estimate " + format_number(value_s, 6) + " s, " +
                   std::to_string(alternations) + " alternations";
        case LifetimeKind::inconclusive:
            break;
    }
    return "inconclusive";
}

LifetimeEstimate estimate_parity_lifetime(const SpectroscopyScan& scan,
                                          const LifetimeOptions& options) {
    if (scan.pixels() < 10) {
        throw PreconditionError("lifetime estimation needs at least 10 pixels, got " +
                                std::to_string(scan.pixels()));
    }
    const double gamma_MHz = scan.linewidth_MHz;
    const double step_MHz = (scan.frequencies_GHz.back() - scan.frequencies_GHz.front()) /
                            double(scan.columns() - 1) * constants::mhz_per_ghz;
    const double assign_MHz = std::max(gamma_MHz, 2.0 * step_MHz);

    LifetimeEstimate est;
    std::optional<Parity> last;
    for (std::size_t p = 0; p < scan.pixels(); ++p) {
        const auto& truth = scan.branches[p];
        const double splitting_MHz =
            std::abs(truth.f_even_GHz - truth.f_odd_GHz) * constants::mhz_per_ghz;
        if (splitting_MHz < options.resolve_linewidths * gamma_MHz) {
            continue;
        }
        ++est.resolvable_pixels;
        const auto peaks =
            detect_peaks(scan.row(p), scan.frequencies_GHz, scan.linewidth_MHz, options.peaks);
        if (peaks.count >= 2) {
            ++est.two_peak_pixels;
            continue;
        }
        if (peaks.count == 0) {
            continue;
        }
        ++est.single_peak_pixels;
        const double f = peaks.positions_GHz.front();
        const double d_even = std::abs(f - truth.f_even_GHz) * constants::mhz_per_ghz;
        const double d_odd = std::abs(f - truth.f_odd_GHz) * constants::mhz_per_ghz;
        if (std::min(d_even, d_odd) > assign_MHz) {
            continue;
        }
        const Parity branch = d_even <= d_odd ? Parity::even : Parity::odd;
        ++est.classified_pixels;
        if (last && *last != branch) {
            ++est.alternations;
        }
        last = branch;
    }

    est.observed_time_s = double(est.resolvable_pixels) * scan.pixel_time_s;
    if (est.resolvable_pixels == 0) {
        return est;
    }
    const double resolvable = double(est.resolvable_pixels);
    if (double(est.two_peak_pixels) >= options.two_branch_fraction * resolvable) {
        est.kind = LifetimeKind::upper_bound;
        est.value_s = scan.pixel_time_s;
    } else if (double(est.single_peak_pixels) >= options.single_branch_fraction * resolvable &&
               est.classified_pixels >= 2) {
        if (est.alternations == 0) {
            est.kind = LifetimeKind::lower_bound;
            est.value_s = scan.duration_s();
        } else {
            est.kind = LifetimeKind::point_estimate;
            est.value_s = est.observed_time_s / double(est.alternations);
        }
    }
    return est;
}

}  // namespace gapqp
