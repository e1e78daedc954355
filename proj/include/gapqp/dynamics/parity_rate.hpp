#pragma once

#include "gapqp/quasiparticle/environment.hpp"
#include "gapqp/quasiparticle/gap_profile.hpp"

namespace gapqp {

struct ParityRateOptions {
    double base_rate_per_s = 1e3;  // unprotected poisoning rate
    /// Scale of the thermal term. Calibrated so the protected device's parity
    /// lifetime falls through 0.2 s near 150 mK; a fit-to-narrative constant.
    double c_th_per_s = 1.3e9;
    double barrier_safety = 5.0;
};

struct ParityRate {
    double total_per_s = 0.0;
    double barrier_term_per_s = 0.0;
    double thermal_term_per_s = 0.0;
    double barrier_K = 0.0;
    double above_barrier_fraction = 1.0;
};

/// Gamma(T) = base_rate * above_barrier_fraction(barrier, T_qp)
///          + c_th * x_thermal(T, Delta_strip).
/// The barrier is the smallest height among protected sides (zero if none);
/// thermal QPs born inside the high-gap strip bypass it.
ParityRate parity_rate_model(const GapProfile& profile, const QPEnvironment& env, double T_K,
                             const ParityRateOptions& options = {});

}  // namespace gapqp
