#pragma once

#include "config.hpp"
#include "output.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace gapqp::cli {

inline constexpr const char* version = "1.0.0";

struct CommonOptions {
    std::optional<std::string> out_dir;
    Format format = Format::csv;
    bool svg = false;
    std::optional<std::uint64_t> seed;  // overrides the config seed
};

struct SpectrumOptions {
    std::string config;
    std::size_t ng_points = 41;  // grid over one period, ng in [0, 1]
};

struct QpOptions {
    std::string config;
    std::string temperature_grid = "0.02:0.3:29";
};

struct ParitySimOptions {
    std::string config;
    std::optional<double> duration_s;
    std::optional<double> temperature_K;
    std::size_t ensemble = 0;
    unsigned threads = 1;
};

enum class FitKind { t1, t2 };

struct FitOptions {
    FitKind kind = FitKind::t1;
    std::string data;
    std::string config;
    std::optional<std::string> t1_data;  // T1 series for the t2 model
};

struct SynthOptions {
    FitKind kind = FitKind::t1;
    std::string config;
    std::string temperature_range = "0.03:0.25";
    std::size_t points = 12;
    double noise = 0.05;
    double n0 = 0.027;
    double gamma_offset_per_s = 2e4;
};

/// a:b:n -> n evenly spaced values; throws ConfigError when malformed.
std::vector<double> parse_grid(const std::string& spec, bool with_count);

void run_spectrum(const SpectrumOptions& options, const CommonOptions& common, std::ostream& out);
void run_qp(const QpOptions& options, const CommonOptions& common, std::ostream& out);
void run_parity_sim(const ParitySimOptions& options, const CommonOptions& common, std::ostream& out);
void run_fit(const FitOptions& options, const CommonOptions& common, std::ostream& out);
void run_synth(const SynthOptions& options, const CommonOptions& common, std::ostream& out);

}  // namespace gapqp::cli
