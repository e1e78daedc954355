#pragma once

#include "gapqp/dynamics/peaks.hpp"
#include "gapqp/dynamics/scan.hpp"

#include <cstddef>
#include <string>

namespace gapqp {

enum class LifetimeKind { upper_bound, lower_bound, point_estimate, inconclusive };

std::string to_string(LifetimeKind kind);

struct LifetimeEstimate {
    LifetimeKind kind = LifetimeKind::inconclusive;
    double value_s = 0.0;
    std::size_t resolvable_pixels = 0;  // predicted splitting wide enough to separate branches
    std::size_t two_peak_pixels = 0;
    std::size_t single_peak_pixels = 0;
    std::size_t classified_pixels = 0;
    std::size_t alternations = 0;
    double observed_time_s = 0.0;

    /// e.g. "upper bound 0.2 s, two-branch"
    [[nodiscard]] std::string describe() const;
};

struct LifetimeOptions {
    PeakOptions peaks;
    double resolve_linewidths = 3.0;     // minimum predicted splitting, in linewidths
    double two_branch_fraction = 0.9;
    double single_branch_fraction = 0.5;
};

/// Parity lifetime from a scan:
///  - >= 90% of resolvable pixels with two peaks: upper bound = pixel time;
///  - otherwise single-peak pixels are assigned to the nearer ng-predicted
///    branch; no alternation gives a lower bound = scan duration, and n
///    alternations give observed time / n.
/// Throws PreconditionError for scans with fewer than 10 pixels.
LifetimeEstimate estimate_parity_lifetime(const SpectroscopyScan& scan,
                                          const LifetimeOptions& options = {});

}  // namespace gapqp
