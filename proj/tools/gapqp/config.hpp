#pragma once

#include "gapqp/dynamics/parity_rate.hpp"
#include "gapqp/dynamics/scan.hpp"
#include "gapqp/fitting/coherence_models.hpp"
#include "gapqp/physcore/errors.hpp"
#include "gapqp/quasiparticle/environment.hpp"
#include "gapqp/quasiparticle/gap_profile.hpp"
#include "gapqp/transmon/dispersive.hpp"
#include "gapqp/transmon/fit_ej_ec.hpp"
#include "gapqp/transmon/transmon.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace gapqp::cli {

inline constexpr int schema_version = 1;

struct MeasuredValues {
    std::optional<double> t1_us;
    std::optional<double> tc_K;
};

struct NoiseSection {
    std::optional<double> gamma_parity_per_s;  // overrides the rate model
    double tls_rate_per_s = 1.0 / 180.0;
    double jump_max = 1.0;
    double temperature_K = 0.02;
    ParityRateOptions rate;
};

struct SpectroscopySection {
    double linewidth_MHz = 1.0;
    double snr = 20.0;
    double pixel_time_s = 0.2;
    int repetitions = 100;
    double duration_s = 1000.0;
    std::optional<double> f_min_GHz;
    std::optional<double> f_max_GHz;
    std::size_t n_freq = 0;
};

struct DephasingSection {
    std::optional<double> chi_MHz;    // |chi|; computed from the cavity when absent
    std::optional<double> kappa_MHz;  // from the cavity Q when absent
};

struct DeviceConfig {
    std::string name;
    std::string description;
    // Exactly one of the two is set.
    std::optional<TransmonParams> transmon;
    std::optional<FrequencyTargets> targets;
    double ng = 0.0;
    int truncation = 0;
    std::optional<CavityCoupling> cavity;
    std::optional<nlohmann::json> gap_profile;
    ThicknessTcTable thickness_table = ThicknessTcTable::aluminum_default();
    double bcs_ratio = constants::bcs_ratio;
    QPEnvironment qp;
    bool x_nqp_given = false;
    MeasuredValues measured;
    NoiseSection noise;
    SpectroscopySection spectroscopy;
    std::optional<T1ModelParams> t1_model;
    DephasingSection dephasing;
    std::uint64_t seed = 1;
};

/// Config error carrying the source line (0 when unknown).
class ConfigFileError : public ConfigError {
public:
    ConfigFileError(const std::string& message, int line) : ConfigError(message), line_(line) {}
    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

/// Parses config text; every error message is prefixed "<source>:<line>: ".
DeviceConfig parse_config(const std::string& text, const std::string& source = "config");
/// Throws ConfigError when the file cannot be read.
DeviceConfig load_config(const std::string& path);

/// Complete document (defaults included); parse_config(to_json(c).dump()) == c.
nlohmann::json to_json(const DeviceConfig& config);

/// FNV-1a digest of the canonical serialization.
std::string config_digest(const DeviceConfig& config);

struct ResolvedTransmon {
    TransmonParams params;
    std::optional<EjEcFit> fit;  // set when the config gave targets
};

ResolvedTransmon resolve_transmon(const DeviceConfig& config);

/// Throws ConfigError when the config has no gap profile.
GapProfile resolve_profile(const DeviceConfig& config);

struct GapSource {
    double delta_K;
    std::string source;
};

/// Measured Tc when given, otherwise the junction gap of the profile.
GapSource resolve_delta(const DeviceConfig& config);

/// Explicit t1_model, or one built from the measured T1 plateau and Tc with the
/// NQP tunnelling amplitude of the device. Throws ConfigError when neither is
/// available.
T1ModelParams resolve_t1_model(const DeviceConfig& config);

}  // namespace gapqp::cli
