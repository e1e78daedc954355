#include "commands.hpp"

#include "svg.hpp"

#include "gapqp/dynamics/ensemble.hpp"
#include "gapqp/dynamics/lifetime.hpp"
#include "gapqp/dynamics/parity_rate.hpp"
#include "gapqp/dynamics/peaks.hpp"
#include "gapqp/dynamics/rng.hpp"
#include "gapqp/dynamics/scan.hpp"
#include "gapqp/dynamics/telegraph.hpp"
#include "gapqp/fitting/synthetic.hpp"
#include "gapqp/physcore/bcs.hpp"
#include "gapqp/physcore/format.hpp"
#include "gapqp/physcore/units.hpp"
#include "gapqp/quasiparticle/geometry.hpp"
#include "gapqp/quasiparticle/qp_density.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

namespace gapqp::cli {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

Output make_output(const CommonOptions& common, std::ostream& out) {
    if (common.svg && !common.out_dir) {
        throw ConfigError("--svg needs --out <dir> to write the figure into");
    }
    std::optional<std::filesystem::path> dir;
    if (common.out_dir) {
        dir = *common.out_dir;
    }
    return Output(out, dir, common.format);
}

Summary metadata(const std::string& command, const DeviceConfig& config, std::uint64_t seed) {
    Summary m("metadata");
    m.add("program", std::string("gapqp ") + version);
    m.add("command", command);
    m.add("device", config.name);
    m.add("config_digest", config_digest(config));
    m.add("seed", std::to_string(seed));
    return m;
}

double parse_double(const std::string& text, const std::string& what) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ConfigError(what + ": '" + text + "' is not a number");
    }
    return value;
}

double midpoint_f_ge(const TransmonParams& p) {
    return 0.5 * (transition_frequency(p.with_ng(0.0), Transition::ge) +
                  transition_frequency(p.with_ng(0.5), Transition::ge));
}

std::string barrier_text(const BarrierVerdict& v) {
    if (!v.is_protected()) {
        return "unprotected";
    }
    return "protected (margin " + format_number(v.best_margin(), 3) + "×)";
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec, bool with_count) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ':');) {
        parts.push_back(part);
    }
    const std::size_t expected = with_count ? 3 : 2;
    const std::string form = with_count ? "lo:hi:n" : "lo:hi";
    if (parts.size() != expected) {
        throw ConfigError("grid '" + spec + "' must have the form " + form);
    }
    const double lo = parse_double(parts[0], "grid start");
    const double hi = parse_double(parts[1], "grid end");
    if (!(hi > lo)) {
        throw ConfigError("grid '" + spec + "': end must exceed start");
    }
    if (!with_count) {
        return {lo, hi};
    }
    const double n = parse_double(parts[2], "grid count");
    if (n < 2 || n > 100000 || n != std::floor(n)) {
        throw ConfigError("grid '" + spec + "': count must be an integer in [2, 100000]");
    }
    return temperature_grid(lo, hi, std::size_t(n));
}

// ---------------------------------------------------------------- spectrum

void run_spectrum(const SpectrumOptions& options, const CommonOptions& common, std::ostream& out) {
    const DeviceConfig config = load_config(options.config);
    Output output = make_output(common, out);
    if (options.ng_points < 2) {
        throw ConfigError("--ng-points must be at least 2");
    }
    const ResolvedTransmon resolved = resolve_transmon(config);
    const TransmonParams& p = resolved.params;

    Table table{"spectrum", {"ng", "f_ge_GHz", "f_ef_GHz", "f_ge_odd_GHz", "parity_splitting_MHz"}, {}};
    Series even{"f_ge even", {}, {}};
    Series odd{"f_ge odd", {}, {}};
    for (std::size_t i = 0; i < options.ng_points; ++i) {
        const double ng = double(i) / double(options.ng_points - 1);
        const Spectrum s = eigenspectrum(p.with_ng(ng), 3);
        const ParityFrequencies pf = parity_frequencies(p.with_ng(ng));
        table.add({ng, s.f_ge(), s.f_ef(), pf.odd_GHz, pf.splitting() * constants::mhz_per_ghz});
        even.x.push_back(ng);
        even.y.push_back(s.f_ge());
        odd.x.push_back(ng);
        odd.y.push_back(pf.odd_GHz);
    }
    output.emit(table);

    Summary sum("summary");
    sum.add("device", config.name);
    sum.add("parameter_source", resolved.fit ? "fitted to frequency targets" : "config");
    sum.add("EJ", p.EJ_GHz, "GHz");
    sum.add("EC", p.EC_GHz, "GHz");
    sum.add("EJ_over_EC", p.EJ_GHz / p.EC_GHz);
    sum.add("truncation", double(p.effective_truncation()));
    if (resolved.fit) {
        sum.add("fit_max_residual", resolved.fit->max_residual_kHz, "kHz");
        sum.add("fit_iterations", double(resolved.fit->iterations));
    }
    const double ge0 = transition_frequency(p.with_ng(0.0), Transition::ge);
    const double ge5 = transition_frequency(p.with_ng(0.5), Transition::ge);
    const double ef0 = transition_frequency(p.with_ng(0.0), Transition::ef);
    const double ef5 = transition_frequency(p.with_ng(0.5), Transition::ef);
    sum.add("f_ge_ng0", ge0, "GHz");
    sum.add("f_ge_ng0.5", ge5, "GHz");
    sum.add("f_ge_mid", 0.5 * (ge0 + ge5), "GHz");
    sum.add("eps_ge", std::abs(ge5 - ge0), "GHz");
    sum.add("f_ef_mid", 0.5 * (ef0 + ef5), "GHz");
    sum.add("eps_ef", std::abs(ef5 - ef0), "GHz");
    sum.add("anharmonicity_mid", 0.5 * (ef0 + ef5) - 0.5 * (ge0 + ge5), "GHz");
    sum.add("parity_splitting_at_config_ng", parity_frequencies(p).splitting() * constants::mhz_per_ghz,
            "MHz");
    if (config.cavity) {
        const CavityCoupling& cav = *config.cavity;
        sum.add("kappa", cav.kappa_MHz(), "MHz");
        try {
            sum.add("chi_ng0", chi(p.with_ng(0.0), cav), "MHz");
            sum.add("chi_ng0.5", chi(p.with_ng(0.5), cav), "MHz");
            sum.add("delta_nu_r", resonator_dispersion(p, cav), "kHz");
        } catch (const PreconditionError& e) {
            sum.add("dispersive", std::string("unavailable: ") + e.what());
        }
    }
    output.emit(sum.table);
    output.emit(metadata("spectrum", config, config.seed).table);

    if (common.svg) {
        LinePlot plot{"Transition frequency vs offset charge: " + config.name,
                      {"offset charge ng", false},
                      {"f_ge (GHz)", false},
                      {even, odd}};
        output.emit_text("spectrum.svg", render_svg(plot));
    }
    output.finish();
}

// ---------------------------------------------------------------------- qp

void run_qp(const QpOptions& options, const CommonOptions& common, std::ostream& out) {
    const DeviceConfig config = load_config(options.config);
    Output output = make_output(common, out);
    const std::vector<double> temps = parse_grid(options.temperature_grid, true);
    if (temps.front() <= 0.0) {
        throw ConfigError("temperatures must be positive");
    }
    const TransmonParams p = resolve_transmon(config).params;
    const GapSource gap = resolve_delta(config);
    const double delta_GHz = kelvin_to_ghz(gap.delta_K);
    const double delta_eV = kelvin_to_ev(gap.delta_K);
    const double f_ge = midpoint_f_ge(p);
    const bool has_transmon_rate = p.EJ_GHz > 0.0;

    std::optional<double> x_from_t1;
    if (config.measured.t1_us && has_transmon_rate) {
        x_from_t1 = x_from_rate(1.0 / (*config.measured.t1_us * constants::s_per_us), p.EJ_GHz,
                                p.EC_GHz, f_ge, delta_GHz);
    }
    double x_nqp = 0.0;
    std::string x_source = "none (0)";
    if (config.x_nqp_given) {
        x_nqp = config.qp.x_nqp;
        x_source = "config";
    } else if (x_from_t1) {
        x_nqp = *x_from_t1;
        x_source = "measured T1";
    }
    QPEnvironment env = config.qp;
    env.x_nqp = x_nqp;

    std::optional<GapProfile> profile;
    if (config.gap_profile) {
        profile = resolve_profile(config);
    }

    Table table{"qp_vs_T", {"T_K", "x_thermal", "x_qp", "gamma1_qp_per_s", "t1_qp_us"}, {}};
    if (profile) {
        table.columns.insert(table.columns.end(), {"parity_rate_per_s", "parity_lifetime_s"});
    }
    Series gamma_series{"Gamma_1 (NQP + thermal)", {}, {}};
    Series parity_series{"parity rate", {}, {}};
    for (double T : temps) {
        const double xt = thermal_qp_term(T, gap.delta_K);
        const double xq = x_nqp + xt;
        const double g1 = has_transmon_rate ? nqp_decay_rate(p.EJ_GHz, p.EC_GHz, f_ge, delta_GHz, xq) : nan;
        std::vector<Cell> row{T, xt, xq, g1, 1.0 / g1 / constants::s_per_us};
        gamma_series.x.push_back(T);
        gamma_series.y.push_back(g1);
        if (profile) {
            const ParityRate rate = parity_rate_model(*profile, env, T, config.noise.rate);
            row.emplace_back(rate.total_per_s);
            row.emplace_back(1.0 / rate.total_per_s);
            parity_series.x.push_back(T);
            parity_series.y.push_back(rate.total_per_s);
        }
        table.add(std::move(row));
    }
    output.emit(table);

    Summary sum("summary");
    sum.add("device", config.name);
    sum.add("delta", gap.delta_K, "K");
    sum.add("delta_source", gap.source);
    sum.add("f_ge_mid", f_ge, "GHz");
    if (x_from_t1) {
        sum.add("t1_measured", *config.measured.t1_us, "us");
        sum.add("x_nqp_from_t1", *x_from_t1);
        sum.add("n_nqp_from_t1", volume_density(*x_from_t1, env.nu0_per_eV_um3, delta_eV), "per um^3");
    }
    sum.add("x_nqp", x_nqp);
    sum.add("x_nqp_source", x_source);
    sum.add("n_nqp", volume_density(x_nqp, env.nu0_per_eV_um3, delta_eV), "per um^3");
    if (x_nqp > 0.0) {
        try {
            sum.add("crossover_T", crossover_temperature(x_nqp, gap.delta_K), "K");
        } catch (const DomainError& e) {
            sum.add("crossover_T", std::string("none: ") + e.what(), "K");
        }
    }
    sum.add("tau_eps_exponent", tau_power_law_exponent(env));
    sum.add("L_eps_at_0.5K", diffusion_length_um(0.5, env), "um");
    if (profile) {
        const BarrierVerdict barrier = barrier_adequate(*profile, env, config.noise.rate.barrier_safety);
        const TrapVerdict trap = trap_adequate(*profile, env);
        if (barrier.is_protected()) {
            sum.add("barrier_height", barrier.effective_barrier_K(), "K");
            sum.add("L_eps_at_barrier", diffusion_length_um(barrier.effective_barrier_K(), env), "um");
            sum.add("barrier_margin", barrier.best_margin());
        }
        for (const Side s : {Side::left, Side::right}) {
            const TrapSide& t = s == Side::left ? trap.left : trap.right;
            const std::string side = s == Side::left ? "left" : "right";
            if (t.is_trap) {
                sum.add("trap_" + side + "_depth", t.depth_K, "K");
                sum.add("trap_" + side + "_length", t.length_um, "um");
                sum.add("trap_" + side + "_required_length", t.required_length_um, "um");
            }
        }
        const std::string trap_text = trap.adequate() ? "adequate" : "inadequate";
        sum.add("barrier", barrier_text(barrier));
        sum.add("trap", trap_text);
        sum.add("verdict", "barrier: " + barrier_text(barrier) + "; trap: " + trap_text);
        const ParityRate base = parity_rate_model(*profile, env, config.noise.temperature_K, config.noise.rate);
        sum.add("base_temperature", config.noise.temperature_K, "K");
        sum.add("above_barrier_fraction", base.above_barrier_fraction);
        sum.add("parity_rate_at_base", base.total_per_s, "per s");
    }
    output.emit(sum.table);
    output.emit(metadata("qp", config, config.seed).table);

    if (common.svg) {
        LinePlot plot{"Quasiparticle rates: " + config.name, {"T (K)", false}, {"rate (1/s)", true}, {gamma_series}};
        if (profile) {
            plot.series.push_back(parity_series);
        }
        output.emit_text("qp.svg", render_svg(plot));
    }
    output.finish();
}

// --------------------------------------------------------------- parity-sim

namespace {

struct Trajectory {
    ParityTrace parity;
    OffsetChargeTrace offset;
    SpectroscopyScan scan;
    LifetimeEstimate estimate;
};

Trajectory simulate_trajectory(const TransmonParams& p, const NoiseModel& noise,
                               const SpectroscopySection& sp, double duration, std::uint64_t seed) {
    ScanConfig sc;
    sc.duration_s = duration;
    sc.pixel_time_s = sp.pixel_time_s;
    sc.repetitions = sp.repetitions;
    sc.f_min_GHz = sp.f_min_GHz;
    sc.f_max_GHz = sp.f_max_GHz;
    sc.n_freq = sp.n_freq;
    Trajectory t;
    t.parity = simulate_parity(noise.gamma_parity_per_s, duration, derive_seed(seed, 0));
    t.offset = simulate_offset_charge(noise, duration, derive_seed(seed, 1), p.ng);
    t.scan = synthesize_scan(p, t.parity, t.offset, sp.linewidth_MHz, sp.snr, sc, derive_seed(seed, 2));
    t.estimate = estimate_parity_lifetime(t.scan);
    return t;
}

}  // namespace

void run_parity_sim(const ParitySimOptions& options, const CommonOptions& common, std::ostream& out) {
    const DeviceConfig config = load_config(options.config);
    Output output = make_output(common, out);
    const std::uint64_t seed = common.seed.value_or(config.seed);
    const double duration = options.duration_s.value_or(config.spectroscopy.duration_s);
    if (!(duration > 0.0)) {
        throw ConfigError("--duration must be positive");
    }
    const double T = options.temperature_K.value_or(config.noise.temperature_K);
    if (!(T >= 0.0)) {
        throw ConfigError("--temperature must be non-negative");
    }
    const TransmonParams p = resolve_transmon(config).params;

    NoiseModel noise;
    noise.tls_rate_per_s = config.noise.tls_rate_per_s;
    noise.jump_max = config.noise.jump_max;
    std::string rate_source = "config";
    if (config.noise.gamma_parity_per_s) {
        noise.gamma_parity_per_s = *config.noise.gamma_parity_per_s;
    } else {
        QPEnvironment env = config.qp;
        noise.gamma_parity_per_s =
            parity_rate_model(resolve_profile(config), env, T, config.noise.rate).total_per_s;
        rate_source = "gap-profile rate model";
    }
    noise.validate();

    Summary meta = metadata("parity-sim", config, seed);
    meta.add("duration", duration, "s");
    meta.add("temperature", T, "K");
    meta.add("gamma_parity", noise.gamma_parity_per_s, "per s");
    meta.add("gamma_parity_source", rate_source);
    meta.add("tls_rate", noise.tls_rate_per_s, "per s");
    meta.add("linewidth", config.spectroscopy.linewidth_MHz, "MHz");
    meta.add("snr", config.spectroscopy.snr);
    meta.add("pixel_time", config.spectroscopy.pixel_time_s, "s");
    meta.add("repetitions", double(config.spectroscopy.repetitions));

    if (options.ensemble > 0) {
        const auto results = run_ensemble(options.ensemble, std::max(1u, options.threads), [&](std::size_t i) {
            const std::uint64_t member_seed = derive_seed(seed, 16 + i);
            const Trajectory t = simulate_trajectory(p, noise, config.spectroscopy, duration, member_seed);
            return std::make_tuple(member_seed, t.parity.switches(), t.offset.jump_times.size(), t.estimate);
        });
        Table table{"ensemble", {"member", "seed", "parity_switches", "tls_jumps", "kind", "value_s", "verdict"}, {}};
        std::size_t counts[4] = {0, 0, 0, 0};
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& [member_seed, switches, jumps, est] = results[i];
            table.add({double(i), std::to_string(member_seed), double(switches), double(jumps),
                       to_string(est.kind), est.value_s, est.describe()});
            ++counts[std::size_t(est.kind)];
        }
        output.emit(table);
        Summary sum("summary");
        sum.add("members", double(results.size()));
        for (const auto kind : {LifetimeKind::upper_bound, LifetimeKind::lower_bound,
                                LifetimeKind::point_estimate, LifetimeKind::inconclusive}) {
            sum.add("count_" + to_string(kind), double(counts[std::size_t(kind)]));
        }
        output.emit(sum.table);
        meta.add("ensemble", double(options.ensemble));
        output.emit(meta.table);
        output.finish();
        return;
    }

    const Trajectory t = simulate_trajectory(p, noise, config.spectroscopy, duration, seed);
    const SpectroscopyScan& scan = t.scan;
    if (common.format == Format::json) {
        output.emit_document("scan", scan_to_json(scan));
    } else {
        Table st{"scan", {"t_s"}, {}};
        for (double f : scan.frequencies_GHz) {
            st.columns.push_back(format_number(f));
        }
        for (std::size_t i = 0; i < scan.pixels(); ++i) {
            std::vector<Cell> row{scan.times_s[i]};
            for (double a : scan.row(i)) {
                row.emplace_back(a);
            }
            st.rows.push_back(std::move(row));
        }
        output.emit(st);
    }

    Table peaks{"peaks",
                {"pixel", "t_s", "ng", "f_even_GHz", "f_odd_GHz", "odd_fraction", "n_peaks", "peak1_GHz",
                 "peak2_GHz"},
                {}};
    for (std::size_t i = 0; i < scan.pixels(); ++i) {
        const PeakDetection d = detect_peaks(scan.row(i), scan.frequencies_GHz, scan.linewidth_MHz);
        const PixelBranches& b = scan.branches[i];
        peaks.add({double(i), scan.times_s[i], b.ng, b.f_even_GHz, b.f_odd_GHz, b.odd_fraction,
                   double(d.count), d.count > 0 ? d.positions_GHz[0] : nan,
                   d.count > 1 ? d.positions_GHz[1] : nan});
    }
    output.emit(peaks);

    const LifetimeEstimate& est = t.estimate;
    Summary sum("summary");
    sum.add("verdict", est.describe());
    sum.add("kind", to_string(est.kind));
    sum.add("lifetime", est.value_s, "s");
    sum.add("parity_switches", double(t.parity.switches()));
    sum.add("tls_jumps", double(t.offset.jump_times.size()));
    sum.add("pixels", double(scan.pixels()));
    sum.add("frequency_points", double(scan.columns()));
    sum.add("resolvable_pixels", double(est.resolvable_pixels));
    sum.add("two_peak_pixels", double(est.two_peak_pixels));
    sum.add("single_peak_pixels", double(est.single_peak_pixels));
    sum.add("classified_pixels", double(est.classified_pixels));
    sum.add("alternations", double(est.alternations));
    output.emit(sum.table);
    output.emit(meta.table);

    if (common.svg) {
        Heatmap map{"Synthetic two-tone spectroscopy: " + config.name,
                    {"time (s)", false},
                    {"frequency (GHz)", false},
                    scan.times_s,
                    scan.frequencies_GHz,
                    scan.amplitudes};
        output.emit_text("scan.svg", render_heatmap(map));
    }
    output.finish();
}

// --------------------------------------------------------------------- fit

namespace {

void emit_parameters(Output& output, const FitResult& fit) {
    Table table{"parameters", {"name", "value", "uncertainty", "unit"}, {}};
    for (const auto& prm : fit.parameters) {
        table.add({prm.name, prm.value, prm.uncertainty, prm.unit});
    }
    output.emit(table);
}

void fit_quality(Summary& sum, const FitResult& fit) {
    sum.add("residual_sum", fit.residual_sum);
    sum.add("dof", double(fit.dof));
    sum.add("reduced_chi2", fit.dof > 0 ? fit.residual_sum / double(fit.dof) : nan);
    sum.add("weighted", fit.weighted ? "yes" : "no");
    sum.add("iterations", double(fit.iterations));
    sum.add("full_rank", fit.full_rank ? "yes" : "no");
}

Table residual_table(const DataSeries& data, const std::function<double(double)>& model_s) {
    Table table{"residuals", {"T_K", "observed_us", "model_us", "sigma_us", "normalized_residual"}, {}};
    for (const auto& pt : data.canonical().points) {
        const double m = model_s(pt.T_K);
        const double sigma = pt.sigma_s.value_or(nan);
        table.add({pt.T_K, pt.value_s / constants::s_per_us, m / constants::s_per_us,
                   sigma / constants::s_per_us, pt.sigma_s ? (pt.value_s - m) / sigma : nan});
    }
    return table;
}

std::string fit_figure(const std::string& title, const std::string& ylabel, const DataSeries& data,
                       const std::function<double(double)>& model_s) {
    Series points{"data", {}, {}, false, true};
    for (const auto& pt : data.canonical().points) {
        points.x.push_back(pt.T_K);
        points.y.push_back(pt.value_s / constants::s_per_us);
    }
    Series curve{"model", {}, {}};
    const double lo = data.min_T();
    const double hi = data.max_T();
    for (int i = 0; i <= 200; ++i) {
        const double T = lo + (hi - lo) * double(i) / 200.0;
        curve.x.push_back(T);
        curve.y.push_back(model_s(T) / constants::s_per_us);
    }
    return render_svg({title, {"T (K)", false}, {ylabel, true}, {points, curve}});
}

T2Settings t2_settings(const DeviceConfig& config) {
    T2Settings s;
    if (!config.cavity) {
        throw ConfigError("a t2 fit needs the cavity section (nu_r_GHz)");
    }
    s.nu_r_GHz = config.cavity->nu_r_GHz;
    s.kappa_MHz = config.dephasing.kappa_MHz.value_or(config.cavity->kappa_MHz());
    if (config.dephasing.chi_MHz) {
        s.chi_MHz = *config.dephasing.chi_MHz;
    } else {
        s.chi_MHz = std::abs(chi(resolve_transmon(config).params, *config.cavity));
    }
    return s;
}

}  // namespace

void run_fit(const FitOptions& options, const CommonOptions& common, std::ostream& out) {
    const DeviceConfig config = load_config(options.config);
    Output output = make_output(common, out);
    const SeriesKind kind = options.kind == FitKind::t1 ? SeriesKind::T1 : SeriesKind::T2star;
    const DataSeries data = read_series_csv_file(options.data, kind);

    Summary sum("summary");
    sum.add("device", config.name);
    sum.add("data_points", double(data.points.size()));
    if (options.kind == FitKind::t1) {
        const T1Fit fit = fit_t1_vs_temperature(data);
        emit_parameters(output, fit.fit);
        fit_quality(sum, fit.fit);
        sum.add("x_nqp_inferred", fit.x_nqp_inferred);
        if (fit.crossover_T_K) {
            sum.add("crossover_T", *fit.crossover_T_K, "K");
        }
        sum.add("delta", delta_from_tc(fit.model.tc_K), "K");
        output.emit(sum.table);
        const auto model = [m = fit.model](double T) { return m.t1_s(T); };
        output.emit(residual_table(data, model));
        output.emit(metadata("fit t1", config, config.seed).table);
        if (common.svg) {
            output.emit_text("fit_t1.svg", fit_figure("T1 vs temperature: " + config.name, "T1 (us)", data, model));
        }
    } else {
        const T2Settings settings = t2_settings(config);
        T1Function t1;
        std::string t1_source;
        if (options.t1_data) {
            t1 = t1_function(read_series_csv_file(*options.t1_data, SeriesKind::T1));
            t1_source = "measured series " + *options.t1_data;
        } else {
            t1 = t1_function(resolve_t1_model(config));
            t1_source = config.t1_model ? "config t1_model" : "model from measured T1 and Tc";
        }
        const T2Fit fit = fit_t2_vs_temperature(data, settings, t1);
        emit_parameters(output, fit.fit);
        fit_quality(sum, fit.fit);
        sum.add("chi", settings.chi_MHz, "MHz");
        sum.add("kappa", settings.kappa_MHz, "MHz");
        sum.add("nu_r", settings.nu_r_GHz, "GHz");
        sum.add("t1_source", t1_source);
        sum.add("floor_temperature", fit.floor_temperature_K, "K");
        output.emit(sum.table);
        const auto model = [&, n0 = fit.n0, off = fit.gamma_offset_per_s](double T) {
            return 1.0 / t2star_rate(T, settings, t1, n0, off);
        };
        output.emit(residual_table(data, model));
        output.emit(metadata("fit t2", config, config.seed).table);
        if (common.svg) {
            output.emit_text("fit_t2.svg", fit_figure("T2* vs temperature: " + config.name, "T2* (us)", data, model));
        }
    }
    output.finish();
}

// ------------------------------------------------------------------- synth

void run_synth(const SynthOptions& options, const CommonOptions& common, std::ostream& out) {
    const DeviceConfig config = load_config(options.config);
    if (common.svg) {
        throw ConfigError("synth does not draw figures");
    }
    Output output = make_output(common, out);
    const std::uint64_t seed = common.seed.value_or(config.seed);
    const auto range = parse_grid(options.temperature_range, false);
    if (range[0] <= 0.0) {
        throw ConfigError("temperatures must be positive");
    }
    if (options.points < 2) {
        throw ConfigError("--points must be at least 2");
    }
    if (!(options.noise >= 0.0 && options.noise < 0.3)) {
        throw ConfigError("--noise must lie in [0, 0.3)");
    }
    const auto temps = temperature_grid(range[0], range[1], options.points);
    const T1ModelParams t1_model = resolve_t1_model(config);
    DataSeries series;
    std::string name;
    if (options.kind == FitKind::t1) {
        series = synthesize_t1(t1_model, temps, options.noise, seed);
        name = "synthetic_t1";
    } else {
        if (!(options.n0 >= 0.0) || !std::isfinite(options.gamma_offset_per_s)) {
            throw ConfigError("--n0 must be non-negative and --gamma-offset finite");
        }
        series = synthesize_t2(t2_settings(config), t1_function(t1_model), options.n0,
                               options.gamma_offset_per_s, temps, options.noise, seed);
        name = "synthetic_t2";
    }
    if (common.format == Format::json) {
        Table table{name, {"T_K", "value_us", "sigma_us"}, {}};
        for (const auto& pt : series.points) {
            table.add({pt.T_K, pt.value_s / constants::s_per_us, pt.sigma_s.value_or(nan) / constants::s_per_us});
        }
        output.emit(table);
    } else {
        std::ostringstream csv;
        csv << "# gapqp " << version << " synth " << (options.kind == FitKind::t1 ? "t1" : "t2")
            << ", device " << config.name << ", seed " << seed << ", noise " << format_number(options.noise);
        if (options.kind == FitKind::t2) {
            csv << ", n0 " << format_number(options.n0) << ", gamma_offset "
                << format_number(options.gamma_offset_per_s) << " per s";
        }
        csv << '\n';
        write_series_csv(csv, series);
        output.emit_text(name + ".csv", csv.str());
    }
    output.finish();
}

}  // namespace gapqp::cli
