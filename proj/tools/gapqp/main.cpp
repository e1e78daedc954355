#include "commands.hpp"

#include "gapqp/fitting/data_series.hpp"
#include "gapqp/fitting/least_squares.hpp"
#include "gapqp/physcore/format.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

using namespace gapqp;
using namespace gapqp::cli;

constexpr int exit_input = 2;
constexpr int exit_numerical = 3;

void add_common(CLI::App* cmd, CommonOptions& common, bool with_seed) {
    cmd->add_option("--out", common.out_dir, "Write one file per table into this directory");
    cmd->add_option("--format", common.format, "Table format: csv or json")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::csv},
                                                                           {"json", Format::json}}));
    cmd->add_flag("--svg", common.svg, "Also write an SVG figure (needs --out)");
    if (with_seed) {
        cmd->add_option("--seed", common.seed, "RNG master seed (default: the config's seed)");
    }
}

void report_fit_failure(const FitError& e) {
    std::cerr << "gapqp: numerical failure: " << e.what() << '\n';
    const FitResult& best = e.best_so_far();
    std::cerr << "best parameters so far (" << best.iterations << " iterations, residual sum "
              << format_number(best.residual_sum) << "):\n";
    for (const auto& p : best.parameters) {
        std::cerr << "  " << p.name << " = " << format_number(p.value) << ' ' << p.unit << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gapqp: transmon spectra, quasiparticle poisoning and coherence models"};
    app.set_version_flag("--version", std::string("gapqp ") + version);
    app.require_subcommand(1);

    CommonOptions common;

    SpectrumOptions spectrum;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Transition frequencies vs offset charge");
    spectrum_cmd->add_option("config", spectrum.config, "Device config (JSON)")->required();
    spectrum_cmd->add_option("--ng-points", spectrum.ng_points, "Points on the ng grid over [0, 1]");
    add_common(spectrum_cmd, common, false);

    QpOptions qp;
    auto* qp_cmd = app.add_subcommand("qp", "Quasiparticle densities, rates and gap-profile verdicts");
    qp_cmd->add_option("config", qp.config, "Device config (JSON)")->required();
    qp_cmd->add_option("--temperature-grid", qp.temperature_grid, "Temperatures lo:hi:n in kelvin")
        ->capture_default_str();
    add_common(qp_cmd, common, false);

    ParitySimOptions parity;
    auto* parity_cmd = app.add_subcommand("parity-sim", "Synthetic parity-resolved spectroscopy scan");
    parity_cmd->add_option("config", parity.config, "Device config (JSON)")->required();
    parity_cmd->add_option("--duration", parity.duration_s, "Scan duration in s (default: config)");
    parity_cmd->add_option("--temperature", parity.temperature_K,
                           "Bath temperature in K for the parity-rate model (default: config)");
    parity_cmd->add_option("--ensemble", parity.ensemble, "Simulate N independent scans, report verdicts only");
    parity_cmd->add_option("--threads", parity.threads, "Worker threads for --ensemble")->capture_default_str();
    add_common(parity_cmd, common, true);

    FitOptions fit;
    std::string fit_kind;
    auto* fit_cmd = app.add_subcommand("fit", "Fit T1(T) or T2*(T) data");
    fit_cmd->add_option("kind", fit_kind, "t1 or t2")->required()->check(CLI::IsMember({"t1", "t2"}));
    fit_cmd->add_option("data", fit.data, "CSV data file")->required();
    fit_cmd->add_option("config", fit.config, "Device config (JSON)")->required();
    fit_cmd->add_option("--t1-data", fit.t1_data, "Measured T1 series used by the t2 model");
    add_common(fit_cmd, common, false);

    SynthOptions synth;
    std::string synth_kind;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic T1 or T2* dataset");
    synth_cmd->add_option("kind", synth_kind, "t1 or t2")->required()->check(CLI::IsMember({"t1", "t2"}));
    synth_cmd->add_option("config", synth.config, "Device config (JSON)")->required();
    synth_cmd->add_option("--t-range", synth.temperature_range, "Temperature range lo:hi in kelvin")
        ->capture_default_str();
    synth_cmd->add_option("--points", synth.points, "Number of temperatures")->capture_default_str();
    synth_cmd->add_option("--noise", synth.noise, "Relative Gaussian noise")->capture_default_str();
    synth_cmd->add_option("--n0", synth.n0, "Resonator photon floor for t2")->capture_default_str();
    synth_cmd->add_option("--gamma-offset", synth.gamma_offset_per_s, "Extra dephasing rate for t2, 1/s")
        ->capture_default_str();
    add_common(synth_cmd, common, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_input;
    }

    try {
        if (*spectrum_cmd) {
            run_spectrum(spectrum, common, std::cout);
        } else if (*qp_cmd) {
            run_qp(qp, common, std::cout);
        } else if (*parity_cmd) {
            run_parity_sim(parity, common, std::cout);
        } else if (*fit_cmd) {
            fit.kind = fit_kind == "t1" ? FitKind::t1 : FitKind::t2;
            run_fit(fit, common, std::cout);
        } else if (*synth_cmd) {
            synth.kind = synth_kind == "t1" ? FitKind::t1 : FitKind::t2;
            run_synth(synth, common, std::cout);
        }
    } catch (const FitError& e) {
        report_fit_failure(e);
        return exit_numerical;
    } catch (const ConvergenceError& e) {
        std::cerr << "gapqp: numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const NumericalError& e) {
        std::cerr << "gapqp: numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const BracketError& e) {
        std::cerr << "gapqp: numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const Error& e) {
        // Config, data, domain, geometry, coverage and precondition errors.
        std::cerr << "gapqp: error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "gapqp: internal error: " << e.what() << '\n';
        return exit_numerical;
    }
    return 0;
}
