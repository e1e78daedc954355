#include "gapqp/transmon/dispersive.hpp"

#include "gapqp/physcore/constants.hpp"
#include "gapqp/physcore/format.hpp"
#include "gapqp/physcore/errors.hpp"

#include <cmath>
#include <string>

namespace gapqp {

void CavityCoupling::validate() const {
    if (!(g_MHz >= 0.0)) {
        throw DomainError("cavity coupling: g must be non-negative");
    }
    if (!(nu_r_GHz > 0.0)) {
        throw DomainError("cavity coupling: resonator frequency must be positive");
    }
    if (!(Q_loaded > 0.0)) {
        throw DomainError("cavity coupling: loaded Q must be positive");
    }
}

double CavityCoupling::kappa_MHz() const {
    validate();
    return nu_r_GHz * constants::mhz_per_ghz / Q_loaded;
}

namespace {

double pull_from_states(const ChargeBasisStates& states, const CavityCoupling& coupling,
                        std::size_t level, const DispersiveOptions& options) {
    const auto& n = states.charge_elements;
    const double n01 = n(0, 1);
    if (coupling.g_MHz == 0.0) {
        return 0.0;
    }
    if (!(n01 > 0.0)) {
        throw PreconditionError("level_pull: <0|n|1> vanishes, coupling normalization undefined");
    }
    const double nu_r = coupling.nu_r_GHz * constants::mhz_per_ghz;
    const auto l = static_cast<Eigen::Index>(level);
    double sum = 0.0;
    for (Eigen::Index j = 0; j < n.rows(); ++j) {
        if (j == l) {
            continue;
        }
        const double g_lj = coupling.g_MHz * n(l, j) / n01;
        const double f_lj = (states.energies[std::size_t(l)] - states.energies[std::size_t(j)]) *
                            constants::mhz_per_ghz;
        const double minus = f_lj - nu_r;
        const double plus = f_lj + nu_r;
        const double guard = options.resonance_guard * g_lj;
        if (std::abs(minus) <= guard || std::abs(plus) <= guard) {
            throw PreconditionError("level_pull: resonator within " +
                                    format_number(options.resonance_guard) +
                                    " g of transition between levels " + std::to_string(l) +
                                    " and " + std::to_string(j));
        }
        sum += g_lj * g_lj * (1.0 / minus + 1.0 / plus);
    }
    return sum;
}

}  // namespace

double level_pull(const TransmonParams& params, const CavityCoupling& coupling, std::size_t level,
                  const DispersiveOptions& options) {
    coupling.validate();
    if (level >= options.levels) {
        throw DomainError("level_pull: level outside the perturbative level set");
    }
    const auto states = charge_matrix_elements(params, options.levels);
    return pull_from_states(states, coupling, level, options);
}

double chi(const TransmonParams& params, const CavityCoupling& coupling,
           const DispersiveOptions& options) {
    coupling.validate();
    const auto states = charge_matrix_elements(params, options.levels);
    return 0.5 * (pull_from_states(states, coupling, 1, options) -
                  pull_from_states(states, coupling, 0, options));
}

double resonator_dispersion(const TransmonParams& params, const CavityCoupling& coupling,
                            ResonatorDispersionMode mode, const DispersiveOptions& options) {
    const TransmonParams p0 = params.with_ng(0.0);
    const TransmonParams p5 = params.with_ng(0.5);
    double diff_MHz = 0.0;
    if (mode == ResonatorDispersionMode::ground_pull) {
        diff_MHz = level_pull(p5, coupling, 0, options) - level_pull(p0, coupling, 0, options);
    } else {
        diff_MHz = chi(p5, coupling, options) - chi(p0, coupling, options);
    }
    return std::abs(diff_MHz) * constants::khz_per_mhz;
}

}  // namespace gapqp
