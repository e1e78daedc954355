#include "gapqp/transmon/fit_ej_ec.hpp"

#include "gapqp/physcore/constants.hpp"
#include "gapqp/physcore/numerics.hpp"
#include "gapqp/physcore/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gapqp {

namespace {

struct ModelFrequencies {
    double ge_low;
    double ge_high;
    double ef_mid;
};

ModelFrequencies model_frequencies(double EJ, double EC) {
    TransmonParams p{EJ, EC, 0.0, 0};
    const Spectrum s0 = eigenspectrum(p, 3);
    const Spectrum s5 = eigenspectrum(p.with_ng(0.5), 3);
    return {std::min(s0.f_ge(), s5.f_ge()), std::max(s0.f_ge(), s5.f_ge()),
            0.5 * (s0.f_ef() + s5.f_ef())};
}

// Leading-order charge dispersion of level m in {0, 1} (peak to peak), GHz.
// The general form carries a 1/m! that is 1 for both levels used here.
double asymptotic_level_dispersion(int m, double EJ, double EC) {
    return EC * std::pow(2.0, 4 * m + 5) * std::sqrt(2.0 / constants::pi) *
           std::pow(EJ / (2.0 * EC), 0.5 * m + 0.75) * std::exp(-std::sqrt(8.0 * EJ / EC));
}

// Perturbative seed: f_ge ~ sqrt(8 EJ EC) - EC, anharmonicity ~ -EC,
// dispersion from the leading asymptotic term.
TransmonParams perturbative_seed(const FrequencyTargets& t) {
    const double f_mid = 0.5 * (t.f_ge_low_GHz + t.f_ge_high_GHz);
    if (t.f_ef_GHz) {
        const double ec = f_mid - *t.f_ef_GHz;
        return {(f_mid + ec) * (f_mid + ec) / (8.0 * ec), ec, 0.0, 0};
    }
    const double dispersion = t.f_ge_high_GHz - t.f_ge_low_GHz;
    auto ec_for_ratio = [&](double r) { return f_mid / (std::sqrt(8.0 * r) - 1.0); };
    auto mismatch = [&](double log_r) {
        const double r = std::exp(log_r);
        const double ec = ec_for_ratio(r);
        const double eps = asymptotic_level_dispersion(0, r * ec, ec) +
                           asymptotic_level_dispersion(1, r * ec, ec);
        return std::log(eps) - std::log(dispersion);
    };
    double log_r = std::log(20.0);
    try {
        log_r = root_find(mismatch, std::log(1.5), std::log(500.0), {1e-8, 200});
    } catch (const BracketError&) {
        // Dispersion outside the asymptotic formula's range; fall back to a
        // typical charge-sensitive ratio and let the simplex do the work.
    }
    const double r = std::exp(log_r);
    const double ec = ec_for_ratio(r);
    return {r * ec, ec, 0.0, 0};
}

}  // namespace

FrequencyTargets targets_from_params(const TransmonParams& params, bool include_ef) {
    const ModelFrequencies m = model_frequencies(params.EJ_GHz, params.EC_GHz);
    FrequencyTargets t{m.ge_low, m.ge_high, std::nullopt};
    if (include_ef) {
        t.f_ef_GHz = m.ef_mid;
    }
    return t;
}

EjEcFit fit_ej_ec(const FrequencyTargets& input, const EjEcFitOptions& options) {
    FrequencyTargets t = input;
    if (t.f_ge_low_GHz > t.f_ge_high_GHz) {
        std::swap(t.f_ge_low_GHz, t.f_ge_high_GHz);
    }
    if (!(t.f_ge_low_GHz > 0.0)) {
        throw PreconditionError("fit_ej_ec: transition frequencies must be positive");
    }
    const double dispersion = t.f_ge_high_GHz - t.f_ge_low_GHz;
    if (dispersion >= t.f_ge_low_GHz) {
        throw PreconditionError("fit_ej_ec: charge dispersion " + std::to_string(dispersion) +
                                " GHz is not smaller than f_ge; targets are inconsistent");
    }
    if (t.f_ef_GHz && !(*t.f_ef_GHz < 0.5 * (t.f_ge_low_GHz + t.f_ge_high_GHz))) {
        throw PreconditionError("fit_ej_ec: f_ef must lie below f_ge (negative anharmonicity)");
    }
    if (t.f_ef_GHz && !(*t.f_ef_GHz > 0.0)) {
        throw PreconditionError("fit_ej_ec: f_ef must be positive");
    }
    if (!t.f_ef_GHz && dispersion <= 1e-9) {
        throw UnderdeterminedError(
            "fit_ej_ec: without f_ef a single ge frequency cannot fix both EJ and EC");
    }

    const TransmonParams seed = perturbative_seed(t);
    auto residuals = [&](const std::vector<double>& x, double* max_abs) {
        const double EJ = std::exp(x[0]);
        const double EC = std::exp(x[1]);
        const ModelFrequencies m = model_frequencies(EJ, EC);
        double r[3] = {m.ge_low - t.f_ge_low_GHz, m.ge_high - t.f_ge_high_GHz,
                       t.f_ef_GHz ? m.ef_mid - *t.f_ef_GHz : 0.0};
        double ss = 0.0;
        double worst = 0.0;
        for (double v : r) {
            ss += v * v;
            worst = std::max(worst, std::abs(v));
        }
        if (max_abs) {
            *max_abs = worst;
        }
        return ss;
    };
    auto objective = [&](const std::vector<double>& x) { return residuals(x, nullptr); };

    NelderMeadOptions nm;
    nm.max_iterations = options.max_iterations;
    nm.initial_step = 0.05;
    nm.f_tol = 1e-26;
    nm.x_tol = 1e-11;
    // Restart once from the first optimum; simplex methods can stall on a
    // narrow valley after the initial shrink.
    std::vector<double> x{std::log(seed.EJ_GHz), std::log(seed.EC_GHz)};
    NelderMeadResult result;
    int iterations = 0;
    for (int pass = 0; pass < 3; ++pass) {
        result = nelder_mead(objective, x, nm);
        iterations += result.iterations;
        x = result.x;
        nm.initial_step = 0.01;
    }
    if (!result.converged) {
        throw ConvergenceError("fit_ej_ec: simplex did not converge after " +
                               std::to_string(iterations) + " iterations; best EJ = " +
                               std::to_string(std::exp(x[0])) + " GHz, EC = " +
                               std::to_string(std::exp(x[1])) + " GHz");
    }
    double worst = 0.0;
    residuals(x, &worst);
    EjEcFit fit;
    fit.params = TransmonParams{std::exp(x[0]), std::exp(x[1]), 0.0, 0};
    fit.max_residual_kHz = worst * constants::hz_per_ghz / 1e3;
    fit.iterations = iterations;
    return fit;
}

}  // namespace gapqp
