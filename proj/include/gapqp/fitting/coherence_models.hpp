#pragma once

#include "gapqp/fitting/data_series.hpp"
#include "gapqp/fitting/least_squares.hpp"

#include <functional>
#include <optional>

namespace gapqp {

/// Gamma_1(T) = Gamma_plateau + A sqrt(2 pi T / Delta) exp(-Delta / T), Delta = 1.764 kB Tc.
struct T1ModelParams {
    double gamma_plateau_per_s = 0.0;
    double tc_K = 0.0;
    double amplitude_per_s = 0.0;

    [[nodiscard]] double rate(double T_K) const;
    [[nodiscard]] double t1_s(double T_K) const { return 1.0 / rate(T_K); }
};

struct T1Fit {
    FitResult fit;
    T1ModelParams model;
    /// Gamma_plateau / A; meaningful only if the plateau is NQP-limited.
    double x_nqp_inferred = 0.0;
    /// Temperature where the thermal term reaches x_nqp_inferred, if any.
    std::optional<double> crossover_T_K;
};

/// Fits T1 data (weighted in T1 space). Requires max T > 1.5 min T and at
/// least 4 points.
T1Fit fit_t1_vs_temperature(const DataSeries& data, const LeastSquaresOptions& options = {});

/// Photon shot-noise dephasing rate in s^-1,
///   (kappa/2) Re[sqrt((1 + 2i chi/kappa)^2 + 8i chi n_th / kappa) - 1].
/// chi and kappa are ordinary frequencies in MHz, converted to angular rates
/// (2 pi x 1e6) here.
double shot_noise_dephasing(double chi_MHz, double kappa_MHz, double n_th);

struct ResonatorTemperature {
    double n_th = 0.0;
    double T_K = 0.0;
    bool at_floor = false;  // gamma_phi = 0: T is only bounded above by 0
};

/// Inverts shot_noise_dephasing on n_th in [0, 10], then the Bose occupation at nu_r.
ResonatorTemperature resonator_thermometry(double gamma_phi_per_s, double chi_MHz,
                                           double kappa_MHz, double nu_r_GHz);

/// 1/T2* - 1/T2echo; requires 0 < T2* <= T2echo.
double pure_dephasing_from_echo(double t2star_s, double t2echo_s);

using T1Function = std::function<double(double T_K)>;

T1Function t1_function(const T1ModelParams& params);
/// Log-linear interpolation of measured T1 in T, held constant outside the data.
T1Function t1_function(const DataSeries& t1_data);

struct T2Settings {
    double chi_MHz = 0.0;
    double kappa_MHz = 0.0;
    double nu_r_GHz = 0.0;
};

/// 1/T2*(T) = 1/(2 T1(T)) + shot_noise_dephasing(chi, kappa, n_th(T) + n0) + gamma_offset.
double t2star_rate(double T_K, const T2Settings& settings, const T1Function& t1, double n0,
                   double gamma_offset_per_s);

struct T2Fit {
    FitResult fit;
    double n0 = 0.0;
    double gamma_offset_per_s = 0.0;
    /// Temperature whose Bose occupation equals the fitted floor n0.
    double floor_temperature_K = 0.0;
};

T2Fit fit_t2_vs_temperature(const DataSeries& data, const T2Settings& settings,
                            const T1Function& t1, const LeastSquaresOptions& options = {});

}  // namespace gapqp
