#include "gapqp/dynamics/scan.hpp"

#include "gapqp/dynamics/rng.hpp"
#include "gapqp/physcore/constants.hpp"
#include "gapqp/physcore/errors.hpp"
#include "gapqp/physcore/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace gapqp {

std::span<const double> SpectroscopyScan::row(std::size_t pixel) const {
    if (pixel >= pixels()) {
        throw DomainError("pixel index out of range");
    }
    return {amplitudes.data() + pixel * columns(), columns()};
}

namespace {

struct Line {
    double f_GHz;
    double weight;
};

struct PixelContent {
    std::vector<Line> lines;
    PixelBranches truth;
};

void validate(const ScanConfig& config, double linewidth_MHz, double snr) {
    if (!(config.duration_s > 0.0) || !(config.pixel_time_s > 0.0)) {
        throw DomainError("scan duration and pixel time must be positive");
    }
    if (config.pixel_time_s > config.duration_s) {
        throw DomainError("pixel time exceeds scan duration");
    }
    if (config.repetitions < 1) {
        throw DomainError("repetitions must be at least 1");
    }
    if (!(linewidth_MHz > 0.0) || !std::isfinite(linewidth_MHz)) {
        throw DomainError("linewidth must be positive and finite");
    }
    if (!(snr > 0.0)) {
        throw DomainError("snr must be positive (inf disables noise)");
    }
    if (config.f_min_GHz.has_value() != config.f_max_GHz.has_value()) {
        throw ConfigError("frequency grid needs both f_min_GHz and f_max_GHz");
    }
    if (config.f_min_GHz && !(*config.f_max_GHz > *config.f_min_GHz)) {
        throw ConfigError("frequency grid requires f_max_GHz > f_min_GHz");
    }
    if (!(config.points_per_linewidth > 0.0) || config.max_points < 2) {
        throw ConfigError("grid sampling settings are invalid");
    }
}

}  // namespace

SpectroscopyScan synthesize_scan(const TransmonParams& params, const ParityTrace& parity,
                                 const OffsetChargeTrace& offset, double linewidth_MHz, double snr,
                                 const ScanConfig& config, std::uint64_t seed) {
    validate(config, linewidth_MHz, snr);
    params.validate();
    const auto n_pixels = std::size_t(std::floor(config.duration_s / config.pixel_time_s + 1e-9));

    // Branch frequencies are needed once per distinct offset-charge plateau.
    std::map<std::size_t, ParityFrequencies> cache;
    auto frequencies_for = [&](std::size_t plateau, double ng) -> const ParityFrequencies& {
        auto it = cache.find(plateau);
        if (it == cache.end()) {
            it = cache.emplace(plateau, parity_frequencies(params.with_ng(ng))).first;
        }
        return it->second;
    };

    std::vector<PixelContent> contents(n_pixels);
    double f_lo = std::numeric_limits<double>::infinity();
    double f_hi = -f_lo;
    std::vector<double> cuts;
    for (std::size_t p = 0; p < n_pixels; ++p) {
        const double t0 = double(p) * config.pixel_time_s;
        const double t1 = t0 + config.pixel_time_s;
        cuts.assign({t0, t1});
        for (const auto* times : {&parity.event_times, &offset.jump_times}) {
            auto first = std::upper_bound(times->begin(), times->end(), t0);
            auto last = std::lower_bound(times->begin(), times->end(), t1);
            cuts.insert(cuts.end(), first, last);
        }
        std::sort(cuts.begin(), cuts.end());

        auto& content = contents[p];
        std::map<std::size_t, double> plateau_dwell;
        double odd_dwell = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double dt = cuts[i + 1] - cuts[i];
            if (dt <= 0.0) {
                continue;
            }
            const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
            const auto plateau = std::size_t(
                std::upper_bound(offset.jump_times.begin(), offset.jump_times.end(), mid) -
                offset.jump_times.begin());
            const auto& freqs = frequencies_for(plateau, offset.ng_at(mid));
            const bool odd = parity.parity_at(mid) == Parity::odd;
            const double f = odd ? freqs.odd_GHz : freqs.even_GHz;
            const double w = dt / config.pixel_time_s;
            auto same = std::find_if(content.lines.begin(), content.lines.end(),
                                     [f](const Line& l) { return l.f_GHz == f; });
            if (same == content.lines.end()) {
                content.lines.push_back({f, w});
            } else {
                same->weight += w;
            }
            plateau_dwell[plateau] += dt;
            if (odd) {
                odd_dwell += dt;
            }
            f_lo = std::min(f_lo, f);
            f_hi = std::max(f_hi, f);
        }
        const auto dominant = std::max_element(
            plateau_dwell.begin(), plateau_dwell.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
        const double ng = dominant->first == 0 ? offset.initial_ng
                                               : offset.values[dominant->first - 1];
        const auto& freqs = frequencies_for(dominant->first, ng);
        content.truth = {ng, freqs.even_GHz, freqs.odd_GHz, odd_dwell / config.pixel_time_s};
    }

    const double gamma_GHz = linewidth_MHz / constants::mhz_per_ghz;
    double grid_lo = f_lo - config.margin_linewidths * gamma_GHz;
    double grid_hi = f_hi + config.margin_linewidths * gamma_GHz;
    if (config.f_min_GHz) {
        grid_lo = *config.f_min_GHz;
        grid_hi = *config.f_max_GHz;
        if (f_lo < grid_lo || f_hi > grid_hi) {
            throw CoverageError("frequency grid [" + format_number(grid_lo) + ", " +
                                format_number(grid_hi) + "] GHz misses visited branches in [" +
                                format_number(f_lo) + ", " + format_number(f_hi) + "] GHz");
        }
    }
    std::size_t n_freq = config.n_freq;
    if (n_freq == 0) {
        const double steps = std::ceil((grid_hi - grid_lo) / gamma_GHz * config.points_per_linewidth);
        n_freq = std::size_t(std::min(double(config.max_points), std::max(2.0, steps + 1.0)));
    }
    if (n_freq < 2) {
        throw ConfigError("frequency grid needs at least two points");
    }

    SpectroscopyScan scan;
    scan.pixel_time_s = config.pixel_time_s;
    scan.repetitions = config.repetitions;
    scan.linewidth_MHz = linewidth_MHz;
    scan.snr = snr;
    scan.seed = seed;
    scan.frequencies_GHz.resize(n_freq);
    for (std::size_t j = 0; j < n_freq; ++j) {
        scan.frequencies_GHz[j] = grid_lo + (grid_hi - grid_lo) * double(j) / double(n_freq - 1);
    }
    scan.times_s.resize(n_pixels);
    scan.branches.resize(n_pixels);
    scan.amplitudes.resize(n_pixels * n_freq);

    Rng rng(seed);
    const double sigma = std::isinf(snr) ? 0.0 : 1.0 / snr;
    const double half_width_MHz = 0.5 * linewidth_MHz;
    for (std::size_t p = 0; p < n_pixels; ++p) {
        scan.times_s[p] = double(p) * config.pixel_time_s;
        scan.branches[p] = contents[p].truth;
        double* row = scan.amplitudes.data() + p * n_freq;
        for (std::size_t j = 0; j < n_freq; ++j) {
            double a = 0.0;
            for (const auto& line : contents[p].lines) {
                const double detuning_MHz =
                    (scan.frequencies_GHz[j] - line.f_GHz) * constants::mhz_per_ghz;
                const double u = detuning_MHz / half_width_MHz;
                a += line.weight / (1.0 + u * u);
            }
            if (sigma > 0.0) {
                a += sigma * rng.normal();
            }
            row[j] = a;
        }
    }
    return scan;
}

void write_scan_csv(std::ostream& out, const SpectroscopyScan& scan) {
    out << "t_s";
    for (double f : scan.frequencies_GHz) {
        out << ',' << format_number(f, 12);
    }
    out << '\n';
    for (std::size_t p = 0; p < scan.pixels(); ++p) {
        out << format_number(scan.times_s[p]);
        for (double a : scan.row(p)) {
            out << ',' << format_number(a, 8);
        }
        out << '\n';
    }
}

nlohmann::json scan_to_json(const SpectroscopyScan& scan, const nlohmann::json& metadata) {
    nlohmann::json doc;
    doc["metadata"] = metadata.is_null() ? nlohmann::json::object() : metadata;
    doc["metadata"]["seed"] = scan.seed;
    doc["metadata"]["pixel_time_s"] = scan.pixel_time_s;
    doc["metadata"]["repetitions"] = scan.repetitions;
    doc["metadata"]["linewidth_MHz"] = scan.linewidth_MHz;
    doc["metadata"]["snr"] = std::isinf(scan.snr) ? nlohmann::json("inf") : nlohmann::json(scan.snr);
    doc["frequencies_GHz"] = scan.frequencies_GHz;
    doc["times_s"] = scan.times_s;
    auto& rows = doc["amplitudes"] = nlohmann::json::array();
    auto& truth = doc["branches"] = nlohmann::json::array();
    for (std::size_t p = 0; p < scan.pixels(); ++p) {
        const auto r = scan.row(p);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
        const auto& b = scan.branches[p];
        truth.push_back({{"ng", b.ng},
                         {"f_even_GHz", b.f_even_GHz},
                         {"f_odd_GHz", b.f_odd_GHz},
                         {"odd_fraction", b.odd_fraction}});
    }
    return doc;
}

}  // namespace gapqp
