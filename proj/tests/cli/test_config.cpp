#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"
#include "svg.hpp"

#include <doctest.h>

#include <sstream>

using namespace gapqp;
using namespace gapqp::cli;
using doctest::Approx;

namespace {

const std::string source_dir = GAPQP_SOURCE_DIR;

std::string minimal(const std::string& transmon_body) {
    return "{\n  \"schema_version\": 1,\n  \"transmon\": {\n" + transmon_body + "\n  }\n}\n";
}

int error_line(const std::string& text) {
    try {
        (void)parse_config(text, "cfg.json");
    } catch (const ConfigFileError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_CASE("shipped device configs load and round-trip") {
    for (const char* name : {"1NP", "2NP", "1P", "2P", "3P"}) {
        CAPTURE(name);
        const DeviceConfig c = load_config(source_dir + "/configs/" + name + ".json");
        CHECK(c.name == name);
        REQUIRE(c.transmon);
        CHECK(c.cavity);
        CHECK(c.gap_profile);
        const nlohmann::json doc = to_json(c);
        const DeviceConfig again = parse_config(doc.dump(2));
        CHECK(to_json(again) == doc);
        CHECK(again.transmon->EJ_GHz == c.transmon->EJ_GHz);
        CHECK(again.transmon->EC_GHz == c.transmon->EC_GHz);
        CHECK(again.cavity->g_MHz == c.cavity->g_MHz);
        CHECK(again.seed == c.seed);
        CHECK(config_digest(again) == config_digest(c));
    }
}

TEST_CASE("round trip keeps optional sections and awkward values") {
    DeviceConfig c;
    c.name = "odd \"name\", with comma";
    c.targets = FrequencyTargets{4.380, 4.402, std::nullopt};
    c.ng = 0.123456789012345678;
    c.truncation = 40;
    c.qp.x_nqp = 1.0 / 3.0;
    c.x_nqp_given = true;
    c.noise.gamma_parity_per_s = 0.0;
    c.spectroscopy.f_min_GHz = 4.3;
    c.spectroscopy.f_max_GHz = 4.5;
    c.spectroscopy.n_freq = 201;
    c.t1_model = T1ModelParams{1e4, 1.31, 5e10};
    c.dephasing.chi_MHz = 0.55;
    c.seed = 18446744073709551615ull;
    const auto doc = to_json(c);
    const DeviceConfig back = parse_config(doc.dump());
    CHECK(to_json(back) == doc);
    CHECK(back.ng == c.ng);
    CHECK(back.qp.x_nqp == c.qp.x_nqp);
    CHECK(back.seed == c.seed);
    REQUIRE(back.targets);
    CHECK_FALSE(back.transmon);
    CHECK(*back.noise.gamma_parity_per_s == 0.0);
}

TEST_CASE("frequency targets resolve through the EJ/EC fit") {
    const auto c = parse_config(minimal(R"(    "f_ge_low_GHz": 4.380, "f_ge_high_GHz": 4.402, "f_ef_GHz": 3.807)"));
    const ResolvedTransmon r = resolve_transmon(c);
    REQUIRE(r.fit);
    CHECK(r.params.EJ_GHz == Approx(6.92).epsilon(0.03));
    CHECK(r.params.EC_GHz == Approx(0.429).epsilon(0.03));
}

TEST_CASE("config errors carry the offending line") {
    CHECK(error_line(minimal("    \"EJ_GHz\": 5,\n    \"EC_GHz\": -1")) == 5);
    CHECK(error_line(minimal("    \"EJ_GHz\": 5,\n    \"EC_GHz\": \"big\"")) == 5);
    CHECK(error_line(minimal("    \"EJ_GHz\": 5,\n    \"EC_GHz\": 0.3,\n    \"EC_GHZ\": 0.3")) == 6);
    CHECK(error_line("{\n  \"schema_version\": 1,\n  \"transmon\": {\"EJ_GHz\": 5,, }\n}\n") == 3);
    CHECK(error_line("{\n  \"schema_version\": 2,\n  \"transmon\": {}\n}") == 2);
    // Both parameter sets, or neither.
    CHECK(error_line(minimal("    \"EJ_GHz\": 5,\n    \"EC_GHz\": 0.3,\n    \"f_ge_low_GHz\": 4")) == 3);
    CHECK(error_line(minimal("    \"ng\": 0.1")) == 3);
    CHECK_THROWS_WITH_AS(parse_config("{\"transmon\": {}}", "x.json"), doctest::Contains("schema_version"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(minimal("    \"EJ_GHz\": 5,\n    \"EC_GHz\": -1"), "x.json"),
                         doctest::Contains("x.json:5: transmon.EC_GHz"), ConfigError);
    CHECK_THROWS_AS(load_config(source_dir + "/configs/does-not-exist.json"), ConfigError);
}

TEST_CASE("nested sections are validated") {
    const std::string head = "{\n  \"schema_version\": 1,\n  \"transmon\": {\"EJ_GHz\": 7, \"EC_GHz\": 0.4},\n";
    CHECK(error_line(head + "  \"cavity\": {\n    \"g_MHz\": 100,\n    \"nu_r_GHz\": 7\n  }\n}") == 4);
    CHECK(error_line(head + "  \"noise\": {\n    \"jump_max\": 2\n  }\n}") == 5);
    CHECK(error_line(head + "  \"gap_profile\": {\n    \"segments\": [], \"junction_um\": 1\n  }\n}") == 4);
    CHECK(error_line(head + "  \"spectroscopy\": {\n    \"n_freq\": 100\n  }\n}") == 4);
    CHECK(error_line(head + "  \"seed\": -4\n}") == 4);
}

TEST_CASE("derived quantities from the config") {
    const DeviceConfig np = load_config(source_dir + "/configs/1NP.json");
    const GapSource gap = resolve_delta(np);
    CHECK(gap.delta_K == Approx(1.764 * 1.31));
    const T1ModelParams m = resolve_t1_model(np);
    CHECK(m.t1_s(0.02) == Approx(12e-6).epsilon(1e-9));
    CHECK(m.gamma_plateau_per_s / m.amplitude_per_s == Approx(1.8e-6).epsilon(0.1));
}

TEST_CASE("grid parsing") {
    const auto g = parse_grid("0.1:0.2:3", true);
    REQUIRE(g.size() == 3);
    CHECK(g[1] == Approx(0.15));
    CHECK(parse_grid("0.03:0.25", false) == std::vector<double>{0.03, 0.25});
    CHECK_THROWS_AS(parse_grid("0.1:0.2", true), ConfigError);
    CHECK_THROWS_AS(parse_grid("0.2:0.1:3", true), ConfigError);
    CHECK_THROWS_AS(parse_grid("0.1:0.2:2.5", true), ConfigError);
    CHECK_THROWS_AS(parse_grid("a:0.2:3", true), ConfigError);
}

TEST_CASE("tables render as CSV and JSON") {
    Table t{"t", {"a", "b"}, {}};
    t.add({1.5, std::string("x,y")});
    t.add({std::numeric_limits<double>::infinity(), std::string("plain")});
    CHECK_THROWS_AS(t.add({1.0}), DomainError);
    std::ostringstream csv;
    write_csv(csv, t);
    CHECK(csv.str() == "a,b\n1.5,\"x,y\"\ninf,plain\n");
    const auto j = table_to_json(t);
    CHECK(j["rows"][1][0] == "inf");
    CHECK(j["columns"][1] == "b");
}

TEST_CASE("svg output is well formed") {
    LinePlot plot{"a <title>", {"x", false}, {"y", true}, {{"s", {1, 2, 3}, {1, 10, 0}}}};
    const std::string svg = render_svg(plot);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("a &lt;title&gt;") != std::string::npos);
    Heatmap map{"h", {"t", false}, {"f", false}, {0, 1, 2}, {4.0, 4.1}, {0, 1, 2, 3, 4, 5}};
    CHECK(render_heatmap(map).find("<rect") != std::string::npos);
    map.values.pop_back();
    CHECK_THROWS_AS(render_heatmap(map), DomainError);
}
