#include "gapqp/quasiparticle/qp_density.hpp"

#include "gapqp/physcore/constants.hpp"
#include "gapqp/physcore/errors.hpp"
#include "gapqp/physcore/numerics.hpp"

#include <cmath>
#include <string>

namespace gapqp {

void QPEnvironment::validate() const {
    if (!(x_nqp >= 0.0)) {
        throw ConfigError("QP environment: x_nqp must be non-negative");
    }
    if (!(D_m2_per_s > 0.0)) {
        throw ConfigError("QP environment: diffusion constant must be positive");
    }
    if (!(xi_um > 0.0)) {
        throw ConfigError("QP environment: coherence length must be positive");
    }
    if (!(nu0_per_eV_um3 > 0.0)) {
        throw ConfigError("QP environment: density of states must be positive");
    }
    if (!(T_qp_K > 0.0)) {
        throw ConfigError("QP environment: effective QP temperature must be positive");
    }
    if (tau_anchors.size() < 2) {
        throw ConfigError("QP environment: tau_eps needs at least two anchors");
    }
    for (std::size_t i = 0; i < tau_anchors.size(); ++i) {
        const auto& a = tau_anchors[i];
        if (!(a.energy_K > 0.0) || !(a.tau_s > 0.0)) {
            throw ConfigError("QP environment: tau anchors need positive energy and time");
        }
        if (i > 0 && (!(a.energy_K > tau_anchors[i - 1].energy_K) ||
                      !(a.tau_s < tau_anchors[i - 1].tau_s))) {
            throw ConfigError(
                "QP environment: tau anchors must have rising energy and strictly falling tau");
        }
    }
}

double thermal_qp_term(double T_K, double delta_K) {
    if (!(T_K > 0.0) || !(delta_K > 0.0)) {
        throw DomainError("thermal_qp_term: temperature and gap must be positive");
    }
    return std::sqrt(constants::two_pi * T_K / delta_K) * std::exp(-delta_K / T_K);
}

double thermal_qp_fraction(double T_K, double delta_K, double x_nqp) {
    return x_nqp + thermal_qp_term(T_K, delta_K);
}

double crossover_temperature(double x_nqp, double delta_K) {
    if (!(x_nqp > 0.0)) {
        throw DomainError("crossover_temperature: x_nqp must be positive");
    }
    if (!(delta_K > 0.0)) {
        throw DomainError("crossover_temperature: gap must be positive");
    }
    // Compare logarithms: the thermal term spans hundreds of decades on the bracket.
    const double log_x = std::log(x_nqp);
    auto f = [&](double T) {
        return 0.5 * std::log(constants::two_pi * T / delta_K) - delta_K / T - log_x;
    };
    const double lo = 0.010;
    const double hi = 0.5 * delta_K;
    try {
        return root_find(f, lo, hi, {1e-12, 300});
    } catch (const BracketError&) {
        throw DomainError("crossover_temperature: thermal term never equals x_nqp = " +
                          std::to_string(x_nqp) + " between 10 mK and Delta/2");
    }
}

double nqp_decay_rate(double EJ_GHz, double EC_GHz, double f_ge_GHz, double delta_GHz, double x_qp) {
    if (!(EJ_GHz > 0.0) || !(EC_GHz > 0.0) || !(f_ge_GHz > 0.0) || !(delta_GHz > 0.0)) {
        throw DomainError("nqp_decay_rate: energies must be positive");
    }
    if (!(x_qp >= 0.0)) {
        throw DomainError("nqp_decay_rate: x_qp must be non-negative");
    }
    return 32.0 * EJ_GHz * constants::hz_per_ghz * std::sqrt(delta_GHz / (2.0 * f_ge_GHz)) *
           std::sqrt(EC_GHz / (8.0 * EJ_GHz)) * x_qp;
}

double x_from_rate(double gamma_per_s, double EJ_GHz, double EC_GHz, double f_ge_GHz,
                   double delta_GHz) {
    if (!(gamma_per_s >= 0.0)) {
        throw DomainError("x_from_rate: rate must be non-negative");
    }
    return gamma_per_s / nqp_decay_rate(EJ_GHz, EC_GHz, f_ge_GHz, delta_GHz, 1.0);
}

double volume_density(double x_qp, double nu0_per_eV_um3, double delta_eV) {
    if (!(x_qp >= 0.0) || !(nu0_per_eV_um3 > 0.0) || !(delta_eV > 0.0)) {
        throw DomainError("volume_density: need x >= 0, nu0 > 0 and Delta > 0");
    }
    return x_qp * 2.0 * nu0_per_eV_um3 * delta_eV;
}

double x_from_volume_density(double n_per_um3, double nu0_per_eV_um3, double delta_eV) {
    if (!(n_per_um3 >= 0.0) || !(nu0_per_eV_um3 > 0.0) || !(delta_eV > 0.0)) {
        throw DomainError("x_from_volume_density: need n >= 0, nu0 > 0 and Delta > 0");
    }
    return n_per_um3 / (2.0 * nu0_per_eV_um3 * delta_eV);
}

double tau_power_law_exponent(const QPEnvironment& env) {
    env.validate();
    const auto& a = env.tau_anchors;
    return -std::log(a[1].tau_s / a[0].tau_s) / std::log(a[1].energy_K / a[0].energy_K);
}

double tau_eps(double energy_K, const QPEnvironment& env) {
    env.validate();
    if (!(energy_K > 0.0)) {
        throw DomainError("tau_eps: energy above the gap must be positive");
    }
    const auto& a = env.tau_anchors;
    std::size_t seg = 0;
    while (seg + 2 < a.size() && energy_K > a[seg + 1].energy_K) {
        ++seg;
    }
    const auto& lo = a[seg];
    const auto& hi = a[seg + 1];
    const double p = -std::log(hi.tau_s / lo.tau_s) / std::log(hi.energy_K / lo.energy_K);
    return lo.tau_s * std::pow(energy_K / lo.energy_K, -p);
}

double diffusion_length_um(double energy_K, const QPEnvironment& env) {
    return std::sqrt(env.D_m2_per_s * tau_eps(energy_K, env)) * constants::um_per_m;
}

double above_barrier_fraction(double barrier_K, double T_qp_K, double delta_K) {
    if (!(barrier_K >= 0.0)) {
        throw DomainError("above_barrier_fraction: barrier height must be non-negative");
    }
    if (!(T_qp_K > 0.0) || !(delta_K > 0.0)) {
        throw DomainError("above_barrier_fraction: temperature and gap must be positive");
    }
    if (barrier_K == 0.0) {
        return 1.0;
    }
    const double below = bcs_boltzmann_integral(delta_K, T_qp_K, delta_K);
    const double above = bcs_boltzmann_integral(delta_K, T_qp_K, delta_K + barrier_K);
    return above / below;
}

}  // namespace gapqp
