#include "gapqp/fitting/coherence_models.hpp"

#include "gapqp/physcore/bcs.hpp"
#include "gapqp/physcore/constants.hpp"
#include "gapqp/physcore/numerics.hpp"
#include "gapqp/quasiparticle/qp_density.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace gapqp {

double T1ModelParams::rate(double T_K) const {
    return gamma_plateau_per_s + amplitude_per_s * thermal_qp_term(T_K, delta_from_tc(tc_K));
}

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

std::vector<Observation> observations(const DataSeries& data) {
    std::vector<Observation> obs;
    obs.reserve(data.points.size());
    for (const auto& p : data.points) {
        obs.push_back({p.T_K, p.value_s, p.sigma_s});
    }
    return obs;
}

/// Weighted linear least squares for (plateau, amplitude) at fixed Tc in rate space.
struct LinearSeed {
    double plateau = 0.0;
    double amplitude = 0.0;
    double cost = inf;
};

LinearSeed linear_seed(const DataSeries& data, double tc_K) {
    const double delta = delta_from_tc(tc_K);
    double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
    std::vector<double> basis(data.points.size());
    for (std::size_t i = 0; i < data.points.size(); ++i) {
        const auto& p = data.points[i];
        const double rate = 1.0 / p.value_s;
        const double sigma_rate = p.sigma_s ? *p.sigma_s / (p.value_s * p.value_s) : rate;
        const double w = 1.0 / (sigma_rate * sigma_rate);
        basis[i] = thermal_qp_term(p.T_K, delta);
        s11 += w;
        s12 += w * basis[i];
        s22 += w * basis[i] * basis[i];
        b1 += w * rate;
        b2 += w * basis[i] * rate;
    }
    LinearSeed seed;
    const double det = s11 * s22 - s12 * s12;
    if (!(s22 > 0.0) || !(std::abs(det) > 1e-14 * s11 * s22)) {
        return seed;
    }
    seed.plateau = (b1 * s22 - b2 * s12) / det;
    seed.amplitude = (s11 * b2 - s12 * b1) / det;
    if (seed.plateau < 0.0) {
        seed.plateau = 0.0;
        seed.amplitude = b2 / s22;
    }
    if (!(seed.amplitude > 0.0)) {
        return seed;
    }
    seed.cost = 0.0;
    for (std::size_t i = 0; i < data.points.size(); ++i) {
        const auto& p = data.points[i];
        const double model_t1 = 1.0 / (seed.plateau + seed.amplitude * basis[i]);
        const double sigma = p.sigma_s ? *p.sigma_s : p.value_s;
        const double r = (p.value_s - model_t1) / sigma;
        seed.cost += r * r;
    }
    return seed;
}

}  // namespace

T1Fit fit_t1_vs_temperature(const DataSeries& input, const LeastSquaresOptions& options) {
    input.validate();
    const DataSeries data = input.canonical();
    if (data.points.size() < 4) {
        throw PreconditionError("T1 fit needs at least 4 points, got " +
                                std::to_string(data.points.size()));
    }
    if (!(data.max_T() > 1.5 * data.min_T())) {
        throw PreconditionError("T1 data must span both plateau and activated regions "
                                "(max T > 1.5 min T)");
    }

    // Coarse Tc scan with the linear parameters solved exactly at each node.
    double best_tc = 1.0;
    LinearSeed best;
    const int nodes = 400;
    for (int k = 0; k <= nodes; ++k) {
        const double tc = 0.1 * std::pow(100.0, double(k) / nodes);
        const auto seed = linear_seed(data, tc);
        if (seed.cost < best.cost) {
            best = seed;
            best_tc = tc;
        }
    }
    if (!std::isfinite(best.cost)) {
        throw ConvergenceError("no thermally activated component found in the T1 data");
    }

    const Model model = [](double T, std::span<const double> p) {
        return 1.0 / (p[0] + p[2] * thermal_qp_term(T, delta_from_tc(p[1])));
    };
    const std::vector<ParameterSpec> specs = {
        {"gamma_plateau", "s^-1", best.plateau, 0.0, inf},
        {"tc", "K", best_tc, 0.05, 20.0},
        {"amplitude", "s^-1", best.amplitude, 0.0, inf},
    };
    const auto obs = observations(data);
    T1Fit out;
    out.fit = least_squares(model, obs, specs, options);
    out.model = {out.fit.parameters[0].value, out.fit.parameters[1].value,
                 out.fit.parameters[2].value};

    // Positive parameters make the rate non-decreasing; confirm on the fitted curve.
    double previous = 0.0;
    for (int k = 0; k <= 200; ++k) {
        const double T = data.min_T() + (data.max_T() - data.min_T()) * k / 200.0;
        const double rate = out.model.rate(T);
        if (rate < previous) {
            throw NumericalError("fitted T1 model is not monotone in temperature");
        }
        previous = rate;
    }

    out.x_nqp_inferred = out.model.amplitude_per_s > 0.0
                             ? out.model.gamma_plateau_per_s / out.model.amplitude_per_s
                             : 0.0;
    if (out.x_nqp_inferred > 0.0) {
        try {
            out.crossover_T_K = crossover_temperature(out.x_nqp_inferred, delta_from_tc(out.model.tc_K));
        } catch (const DomainError&) {
            out.crossover_T_K.reset();
        }
    }
    return out;
}

double shot_noise_dephasing(double chi_MHz, double kappa_MHz, double n_th) {
    if (!(kappa_MHz > 0.0)) {
        throw DomainError("kappa must be positive");
    }
    if (!(n_th >= 0.0)) {
        throw DomainError("n_th must be non-negative");
    }
    // chi and kappa enter as angular rates.
    const double chi = constants::two_pi * constants::hz_per_mhz * chi_MHz;
    const double kappa = constants::two_pi * constants::hz_per_mhz * kappa_MHz;
    const std::complex<double> a(1.0, 2.0 * chi / kappa);
    const std::complex<double> b(0.0, 8.0 * chi * n_th / kappa);
    // sqrt(a^2 + b) - a = b / (sqrt(a^2 + b) + a) avoids cancellation at small n_th.
    const auto root = std::sqrt(a * a + b);
    return 0.5 * kappa * (b / (root + a)).real();
}

ResonatorTemperature resonator_thermometry(double gamma_phi_per_s, double chi_MHz,
                                           double kappa_MHz, double nu_r_GHz) {
    if (!(gamma_phi_per_s >= 0.0)) {
        throw DomainError("dephasing rate must be non-negative");
    }
    if (!(nu_r_GHz > 0.0)) {
        throw DomainError("resonator frequency must be positive");
    }
    if (gamma_phi_per_s == 0.0) {
        return {0.0, 0.0, true};
    }
    constexpr double n_max = 10.0;
    if (shot_noise_dephasing(chi_MHz, kappa_MHz, n_max) < gamma_phi_per_s) {
        throw DomainError("dephasing rate exceeds the shot-noise model for n_th <= 10");
    }
    const double n = root_find(
        [&](double n_th) { return shot_noise_dephasing(chi_MHz, kappa_MHz, n_th) - gamma_phi_per_s; },
        0.0, n_max, {1e-13, 400});
    return {n, temperature_from_occupation(n, nu_r_GHz), false};
}

double pure_dephasing_from_echo(double t2star_s, double t2echo_s) {
    if (!(t2star_s > 0.0)) {
        throw DomainError("T2* must be positive");
    }
    if (t2star_s > t2echo_s) {
        throw DomainError("T2* exceeds T2 echo");
    }
    return 1.0 / t2star_s - 1.0 / t2echo_s;
}

T1Function t1_function(const T1ModelParams& params) {
    return [params](double T_K) { return params.t1_s(T_K); };
}

T1Function t1_function(const DataSeries& t1_data) {
    t1_data.validate();
    std::vector<std::pair<double, double>> nodes;
    for (const auto& p : t1_data.points) {
        nodes.emplace_back(p.T_K, std::log(p.value_s));
    }
    std::sort(nodes.begin(), nodes.end());
    return [nodes](double T_K) {
        if (T_K <= nodes.front().first) {
            return std::exp(nodes.front().second);
        }
        if (T_K >= nodes.back().first) {
            return std::exp(nodes.back().second);
        }
        auto hi = std::upper_bound(nodes.begin(), nodes.end(), std::make_pair(T_K, -inf));
        auto lo = hi - 1;
        const double w = (T_K - lo->first) / (hi->first - lo->first);
        return std::exp(lo->second + w * (hi->second - lo->second));
    };
}

double t2star_rate(double T_K, const T2Settings& settings, const T1Function& t1, double n0,
                   double gamma_offset_per_s) {
    const double n_th = bose_occupation(settings.nu_r_GHz, T_K) + n0;
    return 0.5 / t1(T_K) + shot_noise_dephasing(settings.chi_MHz, settings.kappa_MHz, n_th) +
           gamma_offset_per_s;
}

T2Fit fit_t2_vs_temperature(const DataSeries& input, const T2Settings& settings,
                            const T1Function& t1, const LeastSquaresOptions& options) {
    input.validate();
    const DataSeries data = input.canonical();
    if (!t1) {
        throw PreconditionError("T2 fit needs a T1 model");
    }
    if (data.points.size() < 3) {
        throw PreconditionError("T2 fit needs at least 3 points");
    }
    if (!(settings.kappa_MHz > 0.0) || !(settings.nu_r_GHz > 0.0)) {
        throw PreconditionError("T2 fit needs positive kappa and resonator frequency");
    }

    // Seed: scan n0 on a log grid, solving the offset as a weighted mean.
    double best_n0 = 0.0;
    double best_offset = 0.0;
    double best_cost = inf;
    for (int k = -1; k <= 120; ++k) {
        const double n0 = k < 0 ? 0.0 : 1e-4 * std::pow(1e4, k / 120.0);
        double sw = 0.0;
        double swr = 0.0;
        for (const auto& p : data.points) {
            const double sigma_rate = p.sigma_s ? *p.sigma_s / (p.value_s * p.value_s) : 1.0 / p.value_s;
            const double w = 1.0 / (sigma_rate * sigma_rate);
            sw += w;
            swr += w * (1.0 / p.value_s - t2star_rate(p.T_K, settings, t1, n0, 0.0));
        }
        const double offset = swr / sw;
        double cost = 0.0;
        for (const auto& p : data.points) {
            const double sigma = p.sigma_s ? *p.sigma_s : p.value_s;
            const double r = (p.value_s - 1.0 / t2star_rate(p.T_K, settings, t1, n0, offset)) / sigma;
            cost += r * r;
        }
        if (std::isfinite(cost) && cost < best_cost) {
            best_cost = cost;
            best_n0 = n0;
            best_offset = offset;
        }
    }

    const Model model = [&](double T, std::span<const double> p) {
        return 1.0 / t2star_rate(T, settings, t1, p[0], p[1]);
    };
    const std::vector<ParameterSpec> specs = {
        {"n0", "", best_n0, 0.0, 10.0},
        {"gamma_offset", "s^-1", best_offset, -inf, inf},
    };
    const auto obs = observations(data);
    T2Fit out;
    out.fit = least_squares(model, obs, specs, options);
    out.n0 = out.fit.parameters[0].value;
    out.gamma_offset_per_s = out.fit.parameters[1].value;
    out.floor_temperature_K = temperature_from_occupation(out.n0, settings.nu_r_GHz);
    return out;
}

}  // namespace gapqp
