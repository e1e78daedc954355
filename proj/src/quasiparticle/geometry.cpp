#include "gapqp/quasiparticle/geometry.hpp"

#include "gapqp/quasiparticle/qp_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gapqp {

double BarrierVerdict::effective_barrier_K() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto* s : {&left, &right}) {
        if (s->is_protected) {
            best = std::min(best, s->barrier_height_K);
        }
    }
    return std::isinf(best) ? 0.0 : best;
}

double BarrierVerdict::best_margin() const {
    double m = 0.0;
    for (const auto* s : {&left, &right}) {
        if (s->is_protected) {
            m = std::max(m, s->margin);
        }
    }
    return m;
}

BarrierVerdict barrier_adequate(const GapProfile& profile, const QPEnvironment& env, double safety) {
    env.validate();
    const double top = profile.junction_adjacent_max_gap_K();
    auto judge = [&](Side s) {
        BarrierSide out;
        const auto& adj = profile.adjacent(s);
        out.barrier_height_K = profile.barrier_height_K(s);
        out.strip_length_um = adj.length_um;
        out.required_length_um = safety * env.xi_um;
        out.margin = adj.length_um / out.required_length_um;
        out.is_protected = adj.delta_K >= top && out.barrier_height_K > 0.0 &&
                           adj.length_um >= out.required_length_um;
        return out;
    };
    return {judge(Side::left), judge(Side::right)};
}

TrapVerdict trap_adequate(const GapProfile& profile, const QPEnvironment& env) {
    env.validate();
    auto judge = [&](Side s) {
        TrapSide out;
        // The well is the lowest-gap segment of the side, nearest the junction on ties.
        const auto segments = profile.side(s);
        const auto well = std::min_element(
            segments.begin(), segments.end(),
            [](const GapSegment& a, const GapSegment& b) { return a.delta_K < b.delta_K; });
        out.length_um = well->length_um;
        out.depth_K = profile.side_max_gap_K(s) - well->delta_K;
        out.is_trap = out.depth_K > 0.0;
        if (out.is_trap) {
            out.required_length_um = diffusion_length_um(out.depth_K, env);
            out.adequate = out.length_um >= out.required_length_um;
        }
        return out;
    };
    return {judge(Side::left), judge(Side::right)};
}

}  // namespace gapqp
