#pragma once

#include "gapqp/quasiparticle/environment.hpp"
#include "gapqp/quasiparticle/gap_profile.hpp"

namespace gapqp {

struct BarrierSide {
    bool is_protected = false;
    double barrier_height_K = 0.0;
    double strip_length_um = 0.0;
    double required_length_um = 0.0;  // safety * xi
    double margin = 0.0;              // strip length / required length
};

struct BarrierVerdict {
    BarrierSide left;
    BarrierSide right;
    /// One protected side suffices.
    [[nodiscard]] bool is_protected() const { return left.is_protected || right.is_protected; }
    [[nodiscard]] const BarrierSide& side(Side s) const { return s == Side::left ? left : right; }
    /// Smallest barrier among protected sides, 0 when unprotected.
    [[nodiscard]] double effective_barrier_K() const;
    /// Margin of the best protected side, 0 when unprotected.
    [[nodiscard]] double best_margin() const;
};

/// A side is protected when its junction-adjacent segment carries the highest
/// junction-adjacent gap, exceeds the lowest gap on that side, and is at least
/// safety * xi long.
BarrierVerdict barrier_adequate(const GapProfile& profile, const QPEnvironment& env,
                                double safety = 5.0);

struct TrapSide {
    bool is_trap = false;        // the side holds a low-gap well below its highest gap
    double depth_K = 0.0;        // highest gap on the side minus the adjacent gap
    double length_um = 0.0;
    double required_length_um = 0.0;  // diffusion length at the trap depth
    bool adequate = false;
};

struct TrapVerdict {
    TrapSide left;
    TrapSide right;
    /// Traps only protect when both sides are adequate.
    [[nodiscard]] bool adequate() const { return left.adequate && right.adequate; }
};

/// Each side's trap is its lowest-gap segment; it is adequate when longer than
/// the diffusion length at the trap depth.
TrapVerdict trap_adequate(const GapProfile& profile, const QPEnvironment& env);

}  // namespace gapqp
