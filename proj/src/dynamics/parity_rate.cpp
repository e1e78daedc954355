#include "gapqp/dynamics/parity_rate.hpp"

#include "gapqp/physcore/errors.hpp"
#include "gapqp/quasiparticle/geometry.hpp"
#include "gapqp/quasiparticle/qp_density.hpp"

#include <algorithm>

namespace gapqp {

ParityRate parity_rate_model(const GapProfile& profile, const QPEnvironment& env, double T_K,
                             const ParityRateOptions& options) {
    env.validate();
    if (!(T_K >= 0.0)) {
        throw DomainError("temperature must be non-negative");
    }
    if (!(options.base_rate_per_s >= 0.0) || !(options.c_th_per_s >= 0.0)) {
        throw DomainError("parity-rate constants must be non-negative");
    }
    const auto verdict = barrier_adequate(profile, env, options.barrier_safety);

    ParityRate rate;
    rate.barrier_K = verdict.effective_barrier_K();
    rate.above_barrier_fraction = 1.0;
    if (verdict.is_protected()) {
        // Least-suppressed protected side sets the residual rate.
        double fraction = 0.0;
        for (Side s : {Side::left, Side::right}) {
            const auto& side = verdict.side(s);
            if (side.is_protected) {
                fraction = std::max(fraction, above_barrier_fraction(side.barrier_height_K, env.T_qp_K,
                                                                     profile.side_min_gap_K(s)));
            }
        }
        rate.above_barrier_fraction = fraction;
    }
    rate.barrier_term_per_s = options.base_rate_per_s * rate.above_barrier_fraction;
    rate.thermal_term_per_s =
        T_K > 0.0 ? options.c_th_per_s * thermal_qp_term(T_K, profile.junction_adjacent_max_gap_K())
                  : 0.0;
    rate.total_per_s = rate.barrier_term_per_s + rate.thermal_term_per_s;
    return rate;
}

}  // namespace gapqp
