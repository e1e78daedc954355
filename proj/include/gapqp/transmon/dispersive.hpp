#pragma once

#include "gapqp/transmon/transmon.hpp"

#include <cstddef>

namespace gapqp {

/// Readout-resonator coupling. g is quoted as g / 2pi in MHz.
struct CavityCoupling {
    double g_MHz = 0.0;
    double nu_r_GHz = 0.0;
    double Q_loaded = 0.0;

    void validate() const;
    /// Linewidth kappa / 2pi = nu_r / Q, in MHz.
    [[nodiscard]] double kappa_MHz() const;
};

struct DispersiveOptions {
    std::size_t levels = 10;          // transmon levels kept in the perturbative sum
    double resonance_guard = 5.0;     // detuning must exceed guard * g_lj
};

/// Second-order cavity pull of transmon level l (MHz):
///   lambda_l = sum_{j != l} g_lj^2 [1/(f_l - f_j - nu_r) + 1/(f_l - f_j + nu_r)],
///   g_lj = g |<l|n|j>| / |<0|n|1>|.
/// Throws PreconditionError naming the level pair that comes within the guard.
double level_pull(const TransmonParams& params, const CavityCoupling& coupling, std::size_t level,
                  const DispersiveOptions& options = {});

/// chi = (lambda_e - lambda_g) / 2, so the full dispersive shift is 2 chi. MHz.
double chi(const TransmonParams& params, const CavityCoupling& coupling,
           const DispersiveOptions& options = {});

enum class ResonatorDispersionMode {
    ground_pull,      // |lambda_g(0.5) - lambda_g(0)|
    chi_difference,   // |chi(0.5) - chi(0)|
};

/// Offset-charge dispersion of the readout resonator, kHz.
double resonator_dispersion(const TransmonParams& params, const CavityCoupling& coupling,
                            ResonatorDispersionMode mode = ResonatorDispersionMode::ground_pull,
                            const DispersiveOptions& options = {});

}  // namespace gapqp
