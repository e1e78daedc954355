#include "gapqp/physcore/bcs.hpp"

#include "gapqp/physcore/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace gapqp {

namespace {

// h f / k_B T
double reduced_energy(double f_GHz, double T_K) { return f_GHz * constants::h_over_kB / T_K; }

}  // namespace

double delta_from_tc(double tc_K, double ratio) {
    if (!(tc_K > 0.0)) {
        throw DomainError("delta_from_tc: critical temperature must be positive, got " +
                          std::to_string(tc_K));
    }
    return ratio * tc_K;
}

double tc_from_delta(double delta_K, double ratio) {
    if (!(delta_K > 0.0)) {
        throw DomainError("tc_from_delta: gap must be positive");
    }
    return delta_K / ratio;
}

double bcs_dos(double energy_K, double delta_K) {
    if (energy_K <= delta_K) {
        return 0.0;
    }
    // (E - D)(E + D) keeps precision just above the gap edge.
    return energy_K / std::sqrt((energy_K - delta_K) * (energy_K + delta_K));
}

double bose_occupation(double f_GHz, double T_K) {
    if (!(T_K > 0.0)) {
        throw DomainError("bose_occupation: temperature must be positive");
    }
    if (!(f_GHz > 0.0)) {
        throw DomainError("bose_occupation: frequency must be positive");
    }
    const double x = reduced_energy(f_GHz, T_K);
    return std::exp(-x) / -std::expm1(-x);
}

double log_bose_occupation(double f_GHz, double T_K) {
    if (!(T_K > 0.0) || !(f_GHz > 0.0)) {
        throw DomainError("log_bose_occupation: frequency and temperature must be positive");
    }
    const double x = reduced_energy(f_GHz, T_K);
    return -x - std::log(-std::expm1(-x));
}

double temperature_from_occupation(double n_th, double f_GHz) {
    if (!(n_th >= 0.0) || !(f_GHz > 0.0)) {
        throw DomainError("temperature_from_occupation: need n_th >= 0 and f > 0");
    }
    if (n_th == 0.0) {
        return 0.0;
    }
    return f_GHz * constants::h_over_kB / std::log1p(1.0 / n_th);
}

double two_level_population(double f_ge_GHz, double T_K) {
    if (!(T_K > 0.0) || !(f_ge_GHz > 0.0)) {
        throw DomainError("two_level_population: frequency and temperature must be positive");
    }
    const double x = reduced_energy(f_ge_GHz, T_K);
    const double w = std::exp(-x);
    return w / (1.0 + w);
}

double temperature_from_population(double p_excited, double f_ge_GHz) {
    if (!(f_ge_GHz > 0.0)) {
        throw DomainError("temperature_from_population: frequency must be positive");
    }
    if (!(p_excited > 0.0) || !(p_excited < 0.5)) {
        throw DomainError("temperature_from_population: population must lie in (0, 0.5), got " +
                          std::to_string(p_excited) + " (inverted populations are not thermal)");
    }
    // P = 1 / (1 + e^x)  =>  x = ln((1 - P) / P)
    const double x = std::log((1.0 - p_excited) / p_excited);
    return f_ge_GHz * constants::h_over_kB / x;
}

}  // namespace gapqp
