#include <doctest.h>

#include "gapqp/dynamics/rng.hpp"
#include "gapqp/fitting/coherence_models.hpp"
#include "gapqp/fitting/data_series.hpp"
#include "gapqp/fitting/least_squares.hpp"
#include "gapqp/fitting/synthetic.hpp"
#include "gapqp/physcore/bcs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace gapqp;
using doctest::Approx;

namespace {

const T1ModelParams paper_t1{1.0 / 12e-6, 1.31, (1.0 / 12e-6) / 8.0e-7};
const T2Settings paper_cavity{0.55, 0.362, 7.24};

std::vector<Observation> quadratic_data() {
    std::vector<Observation> obs;
    for (int i = 0; i < 15; ++i) {
        const double x = -2.0 + 0.3 * i;
        obs.push_back({x, 1.5 - 0.7 * x + 0.25 * x * x, std::nullopt});
    }
    return obs;
}

const Model quadratic = [](double x, std::span<const double> p) { return p[0] + p[1] * x + p[2] * x * x; };

}  // namespace

TEST_CASE("least squares recovers an exact quadratic") {
    const std::vector<ParameterSpec> specs = {{"a", "", 0.0}, {"b", "", 0.0}, {"c", "", 1.0}};
    const auto fit = least_squares(quadratic, quadratic_data(), specs);
    CHECK(fit.parameters[0].value == Approx(1.5).epsilon(1e-8));
    CHECK(fit.parameters[1].value == Approx(-0.7).epsilon(1e-8));
    CHECK(fit.parameters[2].value == Approx(0.25).epsilon(1e-8));
    CHECK(fit.full_rank);
    CHECK(fit.dof == 12);
}

TEST_CASE("least squares error paths") {
    const std::vector<ParameterSpec> outside = {{"a", "", 5.0, 0.0, 1.0}, {"b", "", 0.0}, {"c", "", 0.0}};
    CHECK_THROWS_AS(least_squares(quadratic, quadratic_data(), outside), PreconditionError);

    const Model ignores_b = [](double x, std::span<const double> p) { return p[0] + p[2] * x; };
    const std::vector<ParameterSpec> specs = {{"a", "", 0.0}, {"b", "", 1.0}, {"c", "", 0.0}};
    CHECK_THROWS_AS(least_squares(ignores_b, quadratic_data(), specs), RankDeficiencyError);

    const Model exp_model = [](double x, std::span<const double> p) { return p[0] * std::exp(p[1] * x); };
    std::vector<Observation> obs;
    for (int i = 0; i < 10; ++i) {
        obs.push_back({0.1 * i, 3.0 * std::exp(-2.0 * 0.1 * i) + 0.01 * ((i % 3) - 1), std::nullopt});
    }
    LeastSquaresOptions capped;
    capped.max_iterations = 1;
    const std::vector<ParameterSpec> exp_specs = {{"A", "", 1.0}, {"k", "", 1.0}};
    try {
        least_squares(exp_model, obs, exp_specs, capped);
        FAIL("expected non-convergence");
    } catch (const FitError& e) {
        CHECK(e.best_so_far().parameters.size() == 2);
        CHECK(e.best_so_far().iterations == 1);
    }
}

TEST_CASE("degenerate parameters report infinite uncertainty") {
    const Model product = [](double x, std::span<const double> p) { return p[0] * p[1] * x; };
    std::vector<Observation> obs;
    for (int i = 1; i <= 8; ++i) {
        obs.push_back({double(i), 2.0 * i + 0.01 * (i % 2), std::nullopt});
    }
    const std::vector<ParameterSpec> specs = {{"a", "", 1.0}, {"b", "", 1.0}};
    const auto fit = least_squares(product, obs, specs);
    CHECK_FALSE(fit.full_rank);
    CHECK(std::isinf(fit.parameters[0].uncertainty));
    CHECK(fit.parameters[0].value * fit.parameters[1].value == Approx(2.0).epsilon(1e-3));
}

TEST_CASE("fits are invariant under reordering of the data") {
    const auto data = synthesize_t1(paper_t1, temperature_grid(0.03, 0.25, 12), 0.05, 77);
    auto shuffled = data;
    std::reverse(shuffled.points.begin(), shuffled.points.end());
    std::rotate(shuffled.points.begin(), shuffled.points.begin() + 5, shuffled.points.end());
    const auto a = fit_t1_vs_temperature(data);
    const auto b = fit_t1_vs_temperature(shuffled);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a.fit.parameters[i].value == b.fit.parameters[i].value);
        CHECK(a.fit.parameters[i].uncertainty == b.fit.parameters[i].uncertainty);
    }
    CHECK(a.fit.residual_sum == b.fit.residual_sum);
}

TEST_CASE("T1 model fit") {
    const auto grid = temperature_grid(0.03, 0.25, 12);
    const auto exact = fit_t1_vs_temperature(synthesize_t1(paper_t1, grid, 0.0, 1));
    CHECK(exact.model.tc_K == Approx(1.31).epsilon(1e-8));
    CHECK(exact.model.gamma_plateau_per_s == Approx(paper_t1.gamma_plateau_per_s).epsilon(1e-8));
    CHECK(exact.model.amplitude_per_s == Approx(paper_t1.amplitude_per_s).epsilon(1e-6));
    CHECK(exact.x_nqp_inferred == Approx(8.0e-7).epsilon(1e-6));
    REQUIRE(exact.crossover_T_K.has_value());
    CHECK(*exact.crossover_T_K == Approx(0.169283659482801).epsilon(1e-6));

    const auto noisy = fit_t1_vs_temperature(synthesize_t1(paper_t1, grid, 0.05, 2));
    CHECK(std::abs(noisy.model.tc_K - 1.31) < 0.04);
    CHECK(std::isfinite(noisy.fit["tc"].uncertainty));

    DataSeries narrow = synthesize_t1(paper_t1, temperature_grid(0.1, 0.14, 6), 0.0, 1);
    CHECK_THROWS_AS(fit_t1_vs_temperature(narrow), PreconditionError);
    DataSeries few = synthesize_t1(paper_t1, temperature_grid(0.03, 0.25, 3), 0.0, 1);
    CHECK_THROWS_AS(fit_t1_vs_temperature(few), PreconditionError);
}

TEST_CASE("T1 fit coverage") {
    const auto grid = temperature_grid(0.03, 0.25, 12);
    const double truth[] = {paper_t1.gamma_plateau_per_s, paper_t1.tc_K, paper_t1.amplitude_per_s};
    int covered[3] = {0, 0, 0};
    const int trials = 100;
    for (int s = 0; s < trials; ++s) {
        const auto fit = fit_t1_vs_temperature(synthesize_t1(paper_t1, grid, 0.05, derive_seed(5, std::uint64_t(s))));
        for (std::size_t k = 0; k < 3; ++k) {
            covered[k] += std::abs(fit.fit.parameters[k].value - truth[k]) <= 2.0 * fit.fit.parameters[k].uncertainty;
        }
    }
    for (int c : covered) {
        CHECK(c >= 85);
    }
}

TEST_CASE("shot-noise dephasing") {
    CHECK(shot_noise_dephasing(0.55, 0.36, 0.027) == Approx(54787.74781514699).epsilon(1e-10));
    CHECK(shot_noise_dephasing(0.55, 0.36, 0.027) == Approx(5.6e4).epsilon(0.05));
    CHECK(shot_noise_dephasing(0.55, 0.36, 0.0) == 0.0);
    const double n = 1e-4;
    const double r = 2 * 0.55 / 0.36;
    const double series = 2 * M_PI * 0.36e6 * n * r * r / (1 + r * r);
    CHECK(shot_noise_dephasing(0.55, 0.36, n) == Approx(series).epsilon(0.01));
    double previous = -1.0;
    for (double nth = 0.0; nth < 2.0; nth += 0.05) {
        const double g = shot_noise_dephasing(0.55, 0.36, nth);
        CHECK(g > previous);
        previous = g;
    }
    previous = -1.0;
    for (double chi = 0.0; chi < 3.0; chi += 0.1) {
        const double g = shot_noise_dephasing(-chi, 0.36, 0.05);
        CHECK(g > previous);
        CHECK(g == Approx(shot_noise_dephasing(chi, 0.36, 0.05)).epsilon(1e-12));
        previous = g;
    }
    CHECK_THROWS_AS(shot_noise_dephasing(0.55, 0.0, 0.1), DomainError);
}

TEST_CASE("resonator thermometry") {
    const auto t = resonator_thermometry(5.6e4, 0.55, 0.36, 7.24);
    CHECK(t.n_th == Approx(0.027).epsilon(0.05));
    CHECK_FALSE(t.at_floor);
    CHECK(bose_occupation(7.24, t.T_K) == Approx(t.n_th).epsilon(1e-10));
    const auto floor = resonator_thermometry(0.0, 0.55, 0.36, 7.24);
    CHECK(floor.n_th == 0.0);
    CHECK(floor.T_K == 0.0);
    CHECK(floor.at_floor);
    for (double nth : {1e-4, 0.01, 0.027, 0.3, 2.0, 9.0}) {
        const auto back = resonator_thermometry(shot_noise_dephasing(0.55, 0.36, nth), 0.55, 0.36, 7.24);
        CHECK(std::abs(back.n_th - nth) < 1e-8);
    }
    CHECK_THROWS_AS(resonator_thermometry(1e12, 0.55, 0.36, 7.24), DomainError);
    CHECK_THROWS_AS(resonator_thermometry(-1.0, 0.55, 0.36, 7.24), DomainError);
}

TEST_CASE("pure dephasing from echo") {
    CHECK(pure_dephasing_from_echo(8.2e-6, 15e-6) == Approx(5.528e4).epsilon(1e-3));
    CHECK(pure_dephasing_from_echo(8.2e-6, 15e-6) == Approx(5.6e4).epsilon(0.05));
    CHECK(pure_dephasing_from_echo(10e-6, 10e-6) == 0.0);
    CHECK(pure_dephasing_from_echo(16.4e-6, 30e-6) ==
          Approx(0.5 * pure_dephasing_from_echo(8.2e-6, 15e-6)).epsilon(1e-12));
    CHECK_THROWS_AS(pure_dephasing_from_echo(20e-6, 15e-6), DomainError);
}

TEST_CASE("T2 model and fit") {
    const auto t1 = t1_function(paper_t1);
    CHECK(t2star_rate(0.005, paper_cavity, t1, 0.0, 0.0) == Approx(0.5 / t1(0.005)).epsilon(1e-12));

    const auto grid = temperature_grid(0.03, 0.25, 12);
    const auto exact = fit_t2_vs_temperature(synthesize_t2(paper_cavity, t1, 0.027, 2e4, grid, 0.0, 1), paper_cavity, t1);
    CHECK(exact.n0 == Approx(0.027).epsilon(1e-6));
    CHECK(exact.gamma_offset_per_s == Approx(2e4).epsilon(1e-5));
    // Floor temperature equals thermometry on the floor dephasing rate.
    const auto thermo = resonator_thermometry(
        shot_noise_dephasing(paper_cavity.chi_MHz, paper_cavity.kappa_MHz, exact.n0), paper_cavity.chi_MHz,
        paper_cavity.kappa_MHz, paper_cavity.nu_r_GHz);
    CHECK(exact.floor_temperature_K == Approx(thermo.T_K).epsilon(1e-8));

    int covered[2] = {0, 0};
    const int trials = 100;
    for (int s = 0; s < trials; ++s) {
        const auto data = synthesize_t2(paper_cavity, t1, 0.027, 2e4, grid, 0.05, derive_seed(6, std::uint64_t(s)));
        const auto fit = fit_t2_vs_temperature(data, paper_cavity, t1);
        covered[0] += std::abs(fit.n0 - 0.027) <= 2 * fit.fit.parameters[0].uncertainty;
        covered[1] += std::abs(fit.gamma_offset_per_s - 2e4) <= 2 * fit.fit.parameters[1].uncertainty;
    }
    CHECK(covered[0] >= 85);
    CHECK(covered[1] >= 85);
}

TEST_CASE("interpolated T1 model") {
    DataSeries d{SeriesKind::T1, {{0.05, 20e-6, {}}, {0.1, 10e-6, {}}, {0.2, 1e-6, {}}}};
    const auto f = t1_function(d);
    CHECK(f(0.01) == Approx(20e-6));
    CHECK(f(0.3) == Approx(1e-6));
    CHECK(f(0.075) == Approx(std::sqrt(20e-6 * 10e-6)).epsilon(1e-12));
}

TEST_CASE("CSV ingestion") {
    std::istringstream good("# comment\nT_K,value_us,sigma_us\n0.05,12.0,0.6\n0.10,11.5,0.5\n");
    const auto s = read_series_csv(good, SeriesKind::T1);
    REQUIRE(s.points.size() == 2);
    CHECK(s.points[0].value_s == Approx(12e-6));
    CHECK(*s.points[1].sigma_s == Approx(0.5e-6));

    std::istringstream rates("T_K,rate_per_s,sigma_per_s\n0.05,1e5,1e3\n");
    const auto r = read_series_csv(rates, SeriesKind::T1);
    CHECK(r.points[0].value_s == Approx(1e-5));
    CHECK(*r.points[0].sigma_s == Approx(1e-7));

    std::istringstream empty("");
    CHECK_THROWS_AS(read_series_csv(empty, SeriesKind::T1), DataError);
    std::istringstream header_only("T_K,value_us\n");
    CHECK_THROWS_AS(read_series_csv(header_only, SeriesKind::T1), DataError);
    std::istringstream bad("T_K,value_us\n0.05,12\n0.06,abc\n");
    try {
        read_series_csv(bad, SeriesKind::T1);
        FAIL("expected a data error");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
    std::istringstream negative("T_K,value_us\n-0.05,12\n");
    CHECK_THROWS_AS(read_series_csv(negative, SeriesKind::T1), DataError);
    std::istringstream ragged("T_K,value_us\n0.05,12,3\n");
    CHECK_THROWS_AS(read_series_csv(ragged, SeriesKind::T1), DataError);

    std::ostringstream out;
    write_series_csv(out, s);
    std::istringstream again(out.str());
    const auto s2 = read_series_csv(again, SeriesKind::T1);
    CHECK(s2.points[0].value_s == Approx(s.points[0].value_s).epsilon(1e-12));
}
