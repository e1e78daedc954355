// End-to-end runs of the gapqp executable.
#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using doctest::Approx;

namespace {

const std::string exe = GAPQP_EXE;
const std::string src = GAPQP_SOURCE_DIR;

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const fs::path scratch_root = fs::temp_directory_path() / ("gapqp_cli_test_" + std::to_string(::getpid()));

struct ScratchCleanup {
    ~ScratchCleanup() {
        std::error_code ignored;
        fs::remove_all(scratch_root, ignored);
    }
} cleanup;

fs::path scratch(const std::string& name) {
    const fs::path dir = scratch_root / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

Run run(const std::string& args) {
    const fs::path dir = scratch("io");
    const std::string cmd = "cd '" + src + "' && '" + exe + "' " + args + " > '" + (dir / "out").string() +
                            "' 2> '" + (dir / "err").string() + "'";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(dir / "out");
    r.err = slurp(dir / "err");
    return r;
}

/// quantity -> value of a summary CSV block.
std::map<std::string, std::string> summary(const std::string& csv) {
    std::map<std::string, std::string> out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line) && line != "# summary") {
    }
    std::getline(in, line);  // header
    while (std::getline(in, line) && !line.empty()) {
        const auto comma = line.find(',');
        std::string value = line.substr(comma + 1);
        if (!value.empty() && value.front() == '"') {
            value = value.substr(1, value.rfind('"') - 1);
        } else {
            value = value.substr(0, value.find(','));
        }
        out[line.substr(0, comma)] = value;
    }
    return out;
}

nlohmann::json parameters(const std::string& json_text) {
    nlohmann::json out;
    const auto doc = nlohmann::json::parse(json_text);
    for (const auto& row : doc["parameters"]["rows"]) {
        out[row[0].get<std::string>()] = {row[1], row[2]};
    }
    return out;
}

}  // namespace

TEST_CASE("help lists every flag and exits 0") {
    for (const char* cmd : {"spectrum", "qp", "parity-sim", "fit", "synth"}) {
        const Run r = run(std::string(cmd) + " --help");
        CHECK(r.code == 0);
        CHECK(r.out.find("--out") != std::string::npos);
        CHECK(r.out.find("--format") != std::string::npos);
        CHECK(r.out.find("--svg") != std::string::npos);
    }
    CHECK(run("parity-sim --help").out.find("--seed") != std::string::npos);
    CHECK(run("parity-sim --help").out.find("--threads") != std::string::npos);
    CHECK(run("qp --help").out.find("--temperature-grid") != std::string::npos);
    CHECK(run("").code == 2);
    CHECK(run("spectrum configs/2P.json --bogus").code == 2);
}

TEST_CASE("spectrum reports the charge dispersion") {
    const Run r = run("spectrum configs/2P.json");
    REQUIRE(r.code == 0);
    const auto s = summary(r.out);
    CHECK(std::stod(s.at("eps_ge")) == Approx(0.022).epsilon(0.2));
    CHECK(std::stod(s.at("f_ge_mid")) == Approx(4.391).epsilon(25e-3 / 4.391));
    CHECK(r.out.find("ng,f_ge_GHz,f_ef_GHz,f_ge_odd_GHz,parity_splitting_MHz") != std::string::npos);
}

TEST_CASE("EJ = 0 gives the charging spectrum") {
    const fs::path dir = scratch("ej0");
    std::ofstream(dir / "cpb.json") << R"({"schema_version": 1, "name": "cpb", "transmon": {"EJ_GHz": 0, "EC_GHz": 0.5}})";
    const Run r = run("spectrum '" + (dir / "cpb.json").string() + "' --ng-points 3");
    REQUIRE(r.code == 0);
    // ng = 0: levels 0, 4EC, 4EC.
    CHECK(r.out.find("\n0,2,0,") != std::string::npos);
}

TEST_CASE("input errors exit 2 with a located message") {
    const Run missing = run("spectrum configs/none.json");
    CHECK(missing.code == 2);
    CHECK(missing.err.find("configs/none.json") != std::string::npos);

    const fs::path dir = scratch("bad");
    std::ofstream(dir / "bad.json") << "{\n  \"schema_version\": 1,\n  \"transmon\": {\n    \"EJ_GHz\": 7,\n    \"EC_GHz\": 0\n  }\n}\n";
    const Run bad = run("spectrum '" + (dir / "bad.json").string() + "'");
    CHECK(bad.code == 2);
    CHECK(bad.err.find("bad.json:5:") != std::string::npos);

    std::ofstream(dir / "empty.csv") << "";
    const Run empty = run("fit t1 '" + (dir / "empty.csv").string() + "' configs/1NP.json");
    CHECK(empty.code == 2);

    std::ofstream(dir / "broken.csv") << "T_K,value_us\n0.05,12\n0.1,abc\n";
    const Run broken = run("fit t1 '" + (dir / "broken.csv").string() + "' configs/1NP.json");
    CHECK(broken.code == 2);
    CHECK(broken.err.find("row 3") != std::string::npos);

    CHECK(run("spectrum configs/2P.json --svg").code == 2);
    CHECK(run("qp configs/1P.json --temperature-grid 0.3:0.1:5").code == 2);
}

TEST_CASE("numerical failures exit 3") {
    // T1 rising with temperature has no activated component.
    const fs::path dir = scratch("numerical");
    std::ofstream(dir / "rising.csv") << "T_K,value_us,sigma_us\n0.05,10,1\n0.1,20,1\n0.15,40,1\n0.2,80,1\n0.25,160,1\n";
    const Run r = run("fit t1 '" + (dir / "rising.csv").string() + "' configs/1NP.json");
    CHECK(r.code == 3);
    CHECK(r.err.find("numerical failure") != std::string::npos);
}

TEST_CASE("qp reports headline quasiparticle numbers") {
    const Run np = run("qp configs/1NP.json");
    REQUIRE(np.code == 0);
    const auto s = summary(np.out);
    CHECK(std::stod(s.at("x_nqp_from_t1")) == Approx(1.8e-6).epsilon(0.1));
    CHECK(std::stod(s.at("crossover_T")) == Approx(0.169).epsilon(0.002 / 0.169));
    CHECK(std::stod(s.at("n_nqp")) >= 5.0);
    CHECK(std::stod(s.at("n_nqp_from_t1")) <= 13.0);
    CHECK(s.at("barrier") == "unprotected");

    const Run p = run("qp configs/1P.json");
    REQUIRE(p.code == 0);
    CHECK(summary(p.out).at("verdict") == "barrier: protected (margin 6×); trap: inadequate");
}

TEST_CASE("parity-sim verdicts") {
    const Run np = run("parity-sim configs/2NP.json --duration 200");
    REQUIRE(np.code == 0);
    CHECK(summary(np.out).at("verdict") == "upper bound 0.2 s, two-branch");

    const Run p = run("parity-sim configs/2P.json --duration 1000");
    REQUIRE(p.code == 0);
    CHECK(summary(p.out).at("verdict") == "lower bound 1000 s, single-branch");
}

TEST_CASE("seeded commands are byte-identical across runs and thread counts") {
    const fs::path a = scratch("det_a");
    const fs::path b = scratch("det_b");
    REQUIRE(run("parity-sim configs/3P.json --duration 100 --seed 9 --out '" + a.string() + "' --svg").code == 0);
    REQUIRE(run("parity-sim configs/3P.json --duration 100 --seed 9 --out '" + b.string() + "'").code == 0);
    for (const char* f : {"scan.csv", "peaks.csv", "summary.csv", "metadata.csv"}) {
        CAPTURE(f);
        CHECK(slurp(a / f) == slurp(b / f));
    }
    CHECK(fs::exists(a / "scan.svg"));
    CHECK(run("parity-sim configs/3P.json --duration 100 --seed 10").out !=
          run("parity-sim configs/3P.json --duration 100 --seed 9").out);

    const Run one = run("parity-sim configs/2NP.json --duration 50 --ensemble 6 --threads 1");
    const Run four = run("parity-sim configs/2NP.json --duration 50 --ensemble 6 --threads 4");
    REQUIRE(one.code == 0);
    CHECK(one.out == four.out);

    CHECK(run("synth t1 configs/1NP.json --seed 3").out == run("synth t1 configs/1NP.json --seed 3").out);
    CHECK(run("parity-sim configs/2P.json --duration 20 --format json").code == 0);
}

TEST_CASE("bundled datasets are reproduced by their generator") {
    CHECK(run("synth t1 configs/1NP.json --seed 11").out == slurp(src + "/data/synthetic_1NP_t1.csv"));
    CHECK(run("synth t2 configs/1P.json --seed 21 --n0 0.027 --gamma-offset 2e4").out ==
          slurp(src + "/data/synthetic_1P_t2.csv"));
}

TEST_CASE("fits recover the generating parameters") {
    const Run t1 = run("fit t1 data/synthetic_1NP_t1.csv configs/1NP.json --format json");
    REQUIRE(t1.code == 0);
    const auto p1 = parameters(t1.out);
    const double tc = p1["tc"][0];
    const double tc_sigma = p1["tc"][1];
    CHECK(std::abs(tc - 1.31) < 2.0 * tc_sigma);
    CHECK(tc_sigma < 0.06);

    const Run t2 = run("fit t2 data/synthetic_1P_t2.csv configs/1P.json --format json");
    REQUIRE(t2.code == 0);
    const auto p2 = parameters(t2.out);
    const double n0 = p2["n0"][0];
    const double n0_sigma = p2["n0"][1];
    CHECK(std::abs(n0 - 0.027) < 2.0 * n0_sigma);

    const fs::path dir = scratch("fit_out");
    REQUIRE(run("fit t1 data/synthetic_2NP_t1.csv configs/2NP.json --svg --out '" + dir.string() + "'").code == 0);
    CHECK(fs::exists(dir / "residuals.csv"));
    CHECK(fs::exists(dir / "parameters.csv"));
    CHECK(fs::exists(dir / "fit_t1.svg"));
}
