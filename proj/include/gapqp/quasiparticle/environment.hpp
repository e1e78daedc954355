#pragma once

#include <vector>

namespace gapqp {

struct TauAnchor {
    double energy_K;  // energy above the gap edge
    double tau_s;
};

/// Non-equilibrium quasiparticle environment of a device.
struct QPEnvironment {
    double x_nqp = 0.0;                 // reduced NQP fraction
    double D_m2_per_s = 0.01;           // QP diffusion constant
    std::vector<TauAnchor> tau_anchors{{0.5, 10e-6}, {14.0, 10e-12}};
    double xi_um = 0.1;                 // coherence length of the high-gap film
    double nu0_per_eV_um3 = 1.72e10;    // single-spin density of states
    double T_qp_K = 0.040;              // effective temperature of the gap-edge NQP tail

    /// Throws ConfigError on any violated invariant.
    void validate() const;
};

}  // namespace gapqp
