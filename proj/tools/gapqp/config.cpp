#include "config.hpp"

#include "gapqp/physcore/bcs.hpp"
#include "gapqp/physcore/format.hpp"
#include "gapqp/physcore/units.hpp"
#include "gapqp/quasiparticle/qp_density.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace gapqp::cli {

namespace {

using nlohmann::json;
using Path = std::vector<std::string>;

std::string join(const Path& path) {
    std::string out;
    for (const auto& p : path) {
        if (!out.empty() && p.front() != '[') {
            out += '.';
        }
        out += p;
    }
    return out.empty() ? "<root>" : out;
}

class Source {
public:
    Source(const std::string& text, std::string name) : text_(text), name_(std::move(name)) {}

    /// Line of the innermost key of `path` that can be located textually.
    int line_of(const Path& path) const {
        std::size_t pos = 0;
        bool found_any = false;
        for (const auto& key : path) {
            if (key.front() == '[') {
                continue;
            }
            const auto hit = text_.find('"' + key + '"', pos);
            if (hit == std::string::npos) {
                break;
            }
            pos = hit;
            found_any = true;
        }
        return found_any ? line_at(pos) : 1;
    }

    int line_at(std::size_t byte) const {
        byte = std::min(byte, text_.size());
        return 1 + int(std::count(text_.begin(), text_.begin() + std::ptrdiff_t(byte), '\n'));
    }

    [[noreturn]] void fail(const Path& path, const std::string& message) const {
        const int line = line_of(path);
        throw ConfigFileError(name_ + ":" + std::to_string(line) + ": " + join(path) + ": " + message,
                              line);
    }

    [[noreturn]] void fail_at(int line, const std::string& message) const {
        throw ConfigFileError(name_ + ":" + std::to_string(line) + ": " + message, line);
    }

private:
    const std::string& text_;
    std::string name_;
};

/// Reads one JSON object, tracking which keys were consumed.
class Section {
public:
    Section(const json& node, Path path, const Source& src) : node_(node), path_(std::move(path)), src_(src) {
        if (!node_.is_object()) {
            src_.fail(path_, "expected an object");
        }
    }

    [[nodiscard]] bool has(const std::string& key) const { return node_.contains(key); }

    [[nodiscard]] Path at(const std::string& key) const {
        Path p = path_;
        p.push_back(key);
        return p;
    }

    const json& raw(const std::string& key) {
        used_.insert(key);
        return node_.at(key);
    }

    std::optional<double> number(const std::string& key) {
        if (!has(key)) {
            return std::nullopt;
        }
        const auto& v = raw(key);
        if (!v.is_number()) {
            src_.fail(at(key), "expected a number");
        }
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            src_.fail(at(key), "must be finite");
        }
        return d;
    }

    double required(const std::string& key) {
        auto v = number(key);
        if (!v) {
            src_.fail(path_, "missing required key '" + key + "'");
        }
        return *v;
    }

    /// Checks a value against a predicate, failing with `what` at the key's line.
    template <class Pred>
    void check(const std::string& key, double value, Pred pred, const std::string& what) const {
        if (!pred(value)) {
            src_.fail(at(key), what + " (got " + format_number(value) + ")");
        }
    }

    double positive(const std::string& key, double fallback, bool allow_zero = false) {
        const auto v = number(key);
        if (!v) {
            return fallback;
        }
        check(key, *v, [&](double x) { return allow_zero ? x >= 0.0 : x > 0.0; },
              allow_zero ? "must be non-negative" : "must be positive");
        return *v;
    }

    std::optional<double> optional_positive(const std::string& key, bool allow_zero = false) {
        if (!has(key)) {
            return std::nullopt;
        }
        return positive(key, 0.0, allow_zero);
    }

    std::optional<std::uint64_t> unsigned_integer(const std::string& key) {
        if (!has(key)) {
            return std::nullopt;
        }
        const auto& v = raw(key);
        if (!v.is_number_unsigned()) {
            src_.fail(at(key), "expected a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }

    std::string text(const std::string& key, const std::string& fallback = {}) {
        if (!has(key)) {
            return fallback;
        }
        const auto& v = raw(key);
        if (!v.is_string()) {
            src_.fail(at(key), "expected a string");
        }
        return v.get<std::string>();
    }

    /// Rejects keys nobody asked for (catches typos).
    void finish() const {
        for (const auto& [key, value] : node_.items()) {
            if (!used_.contains(key)) {
                src_.fail(at(key), "unknown key");
            }
        }
    }

    [[nodiscard]] const Path& path() const { return path_; }
    [[nodiscard]] const Source& source() const { return src_; }

private:
    const json& node_;
    Path path_;
    const Source& src_;
    std::set<std::string> used_;
};

std::vector<std::pair<double, double>> read_pairs(const json& node, const Path& path, const Source& src) {
    if (!node.is_array()) {
        src.fail(path, "expected an array of [a, b] pairs");
    }
    std::vector<std::pair<double, double>> out;
    for (const auto& item : node) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
            src.fail(path, "every entry must be a pair of numbers");
        }
        out.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    return out;
}

void read_transmon(Section s, DeviceConfig& c) {
    const bool direct = s.has("EJ_GHz") || s.has("EC_GHz");
    const bool fitted = s.has("f_ge_low_GHz") || s.has("f_ge_high_GHz") || s.has("f_ef_GHz");
    if (direct && fitted) {
        s.source().fail(s.path(), "give either EJ_GHz/EC_GHz or frequency targets, not both");
    }
    if (!direct && !fitted) {
        s.source().fail(s.path(), "needs EJ_GHz and EC_GHz, or f_ge_low_GHz and f_ge_high_GHz");
    }
    c.ng = s.number("ng").value_or(0.0);
    if (const auto n = s.unsigned_integer("truncation")) {
        if (*n > 10000) {
            s.source().fail(s.at("truncation"), "is unreasonably large");
        }
        c.truncation = int(*n);
    }
    if (direct) {
        TransmonParams p;
        p.EJ_GHz = s.required("EJ_GHz");
        s.check("EJ_GHz", p.EJ_GHz, [](double x) { return x >= 0.0; }, "must be non-negative");
        p.EC_GHz = s.required("EC_GHz");
        s.check("EC_GHz", p.EC_GHz, [](double x) { return x > 0.0; }, "must be positive");
        p.ng = c.ng;
        p.truncation = c.truncation;
        c.transmon = p;
    } else {
        FrequencyTargets t;
        t.f_ge_low_GHz = s.required("f_ge_low_GHz");
        s.check("f_ge_low_GHz", t.f_ge_low_GHz, [](double x) { return x > 0.0; }, "must be positive");
        t.f_ge_high_GHz = s.required("f_ge_high_GHz");
        s.check("f_ge_high_GHz", t.f_ge_high_GHz, [](double x) { return x > 0.0; }, "must be positive");
        t.f_ef_GHz = s.optional_positive("f_ef_GHz");
        c.targets = t;
    }
    s.finish();
}

void read_cavity(Section s, DeviceConfig& c) {
    CavityCoupling cav;
    cav.g_MHz = s.required("g_MHz");
    s.check("g_MHz", cav.g_MHz, [](double x) { return x > 0.0; }, "must be positive");
    cav.nu_r_GHz = s.required("nu_r_GHz");
    s.check("nu_r_GHz", cav.nu_r_GHz, [](double x) { return x > 0.0; }, "must be positive");
    cav.Q_loaded = s.required("Q_loaded");
    s.check("Q_loaded", cav.Q_loaded, [](double x) { return x > 0.0; }, "must be positive");
    s.finish();
    c.cavity = cav;
}

void read_qp(Section s, DeviceConfig& c) {
    QPEnvironment& q = c.qp;
    if (s.has("x_nqp")) {
        q.x_nqp = s.positive("x_nqp", 0.0, true);
        c.x_nqp_given = true;
    }
    q.D_m2_per_s = s.positive("D_m2_per_s", q.D_m2_per_s);
    q.xi_um = s.positive("xi_um", q.xi_um);
    q.nu0_per_eV_um3 = s.positive("nu0_per_eV_um3", q.nu0_per_eV_um3);
    q.T_qp_K = s.positive("T_qp_K", q.T_qp_K);
    if (s.has("tau_anchors")) {
        q.tau_anchors.clear();
        for (const auto& [e, tau] : read_pairs(s.raw("tau_anchors"), s.at("tau_anchors"), s.source())) {
            q.tau_anchors.push_back({e, tau});
        }
    }
    try {
        q.validate();
    } catch (const Error& e) {
        s.source().fail(s.path(), e.what());
    }
    s.finish();
}

void read_noise(Section s, DeviceConfig& c) {
    NoiseSection& n = c.noise;
    n.gamma_parity_per_s = s.optional_positive("gamma_parity_per_s", true);
    n.tls_rate_per_s = s.positive("tls_rate_per_s", n.tls_rate_per_s, true);
    n.jump_max = s.positive("jump_max", n.jump_max);
    s.check("jump_max", n.jump_max, [](double x) { return x <= 1.0; }, "must lie in (0, 1]");
    n.temperature_K = s.positive("temperature_K", n.temperature_K, true);
    n.rate.base_rate_per_s = s.positive("base_rate_per_s", n.rate.base_rate_per_s, true);
    n.rate.c_th_per_s = s.positive("c_th_per_s", n.rate.c_th_per_s, true);
    n.rate.barrier_safety = s.positive("barrier_safety", n.rate.barrier_safety);
    s.finish();
}

void read_spectroscopy(Section s, DeviceConfig& c) {
    SpectroscopySection& sp = c.spectroscopy;
    sp.linewidth_MHz = s.positive("linewidth_MHz", sp.linewidth_MHz);
    sp.snr = s.positive("snr", sp.snr);
    sp.pixel_time_s = s.positive("pixel_time_s", sp.pixel_time_s);
    sp.duration_s = s.positive("duration_s", sp.duration_s);
    if (const auto r = s.unsigned_integer("repetitions")) {
        if (*r == 0 || *r > 1000000000) {
            s.source().fail(s.at("repetitions"), "must lie in [1, 1e9]");
        }
        sp.repetitions = int(*r);
    }
    sp.f_min_GHz = s.optional_positive("f_min_GHz");
    sp.f_max_GHz = s.optional_positive("f_max_GHz");
    if (const auto n = s.unsigned_integer("n_freq")) {
        sp.n_freq = std::size_t(*n);
    }
    const bool any = sp.f_min_GHz || sp.f_max_GHz || sp.n_freq != 0;
    const bool all = sp.f_min_GHz && sp.f_max_GHz && sp.n_freq >= 2;
    if (any && !all) {
        s.source().fail(s.path(), "an explicit grid needs f_min_GHz, f_max_GHz and n_freq >= 2");
    }
    if (all && !(*sp.f_max_GHz > *sp.f_min_GHz)) {
        s.source().fail(s.at("f_max_GHz"), "must exceed f_min_GHz");
    }
    s.finish();
}

void read_t1_model(Section s, DeviceConfig& c) {
    T1ModelParams m;
    m.gamma_plateau_per_s = s.required("gamma_plateau_per_s");
    s.check("gamma_plateau_per_s", m.gamma_plateau_per_s, [](double x) { return x >= 0.0; },
            "must be non-negative");
    m.tc_K = s.required("tc_K");
    s.check("tc_K", m.tc_K, [](double x) { return x > 0.0; }, "must be positive");
    m.amplitude_per_s = s.required("amplitude_per_s");
    s.check("amplitude_per_s", m.amplitude_per_s, [](double x) { return x >= 0.0; },
            "must be non-negative");
    s.finish();
    c.t1_model = m;
}

DeviceConfig read_document(const json& doc, const Source& src) {
    DeviceConfig c;
    Section root(doc, {}, src);
    const auto version = root.unsigned_integer("schema_version");
    if (!version) {
        src.fail({}, "missing required key 'schema_version'");
    }
    if (*version != std::uint64_t(schema_version)) {
        src.fail({"schema_version"}, "unsupported version " + std::to_string(*version) +
                                         " (this build reads version " +
                                         std::to_string(schema_version) + ")");
    }
    c.name = root.text("name");
    c.description = root.text("description");
    if (!root.has("transmon")) {
        src.fail({}, "missing required section 'transmon'");
    }
    read_transmon(Section(root.raw("transmon"), {"transmon"}, src), c);
    if (root.has("cavity")) {
        read_cavity(Section(root.raw("cavity"), {"cavity"}, src), c);
    }
    if (root.has("bcs_ratio")) {
        c.bcs_ratio = root.positive("bcs_ratio", c.bcs_ratio);
    }
    if (root.has("thickness_table")) {
        ThicknessTcTable table;
        table.anchors = read_pairs(root.raw("thickness_table"), {"thickness_table"}, src);
        try {
            table.validate();
        } catch (const Error& e) {
            src.fail({"thickness_table"}, e.what());
        }
        c.thickness_table = table;
    }
    if (root.has("gap_profile")) {
        c.gap_profile = root.raw("gap_profile");
        try {
            (void)gap_profile_from_json(*c.gap_profile, c.thickness_table, c.bcs_ratio);
        } catch (const Error& e) {
            src.fail({"gap_profile"}, e.what());
        }
    }
    if (root.has("qp_environment")) {
        read_qp(Section(root.raw("qp_environment"), {"qp_environment"}, src), c);
    }
    if (root.has("measured")) {
        Section s(root.raw("measured"), {"measured"}, src);
        c.measured.t1_us = s.optional_positive("t1_us");
        c.measured.tc_K = s.optional_positive("tc_K");
        s.finish();
    }
    if (root.has("noise")) {
        read_noise(Section(root.raw("noise"), {"noise"}, src), c);
    }
    if (root.has("spectroscopy")) {
        read_spectroscopy(Section(root.raw("spectroscopy"), {"spectroscopy"}, src), c);
    }
    if (root.has("t1_model")) {
        read_t1_model(Section(root.raw("t1_model"), {"t1_model"}, src), c);
    }
    if (root.has("dephasing")) {
        Section s(root.raw("dephasing"), {"dephasing"}, src);
        c.dephasing.chi_MHz = s.optional_positive("chi_MHz");
        c.dephasing.kappa_MHz = s.optional_positive("kappa_MHz");
        s.finish();
    }
    if (const auto seed = root.unsigned_integer("seed")) {
        c.seed = *seed;
    }
    root.finish();
    return c;
}

}  // namespace

DeviceConfig parse_config(const std::string& text, const std::string& source) {
    const Source src(text, source);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::string what = e.what();
        // Drop nlohmann's "[json.exception.parse_error.101] " prefix.
        if (const auto cut = what.find("] "); cut != std::string::npos) {
            what = what.substr(cut + 2);
        }
        src.fail_at(src.line_at(e.byte == 0 ? 0 : e.byte - 1), "invalid JSON: " + what);
    }
    return read_document(doc, src);
}

DeviceConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path);
}

nlohmann::json to_json(const DeviceConfig& c) {
    json doc;
    doc["schema_version"] = schema_version;
    doc["name"] = c.name;
    doc["description"] = c.description;
    json t;
    if (c.transmon) {
        t["EJ_GHz"] = c.transmon->EJ_GHz;
        t["EC_GHz"] = c.transmon->EC_GHz;
    } else if (c.targets) {
        t["f_ge_low_GHz"] = c.targets->f_ge_low_GHz;
        t["f_ge_high_GHz"] = c.targets->f_ge_high_GHz;
        if (c.targets->f_ef_GHz) {
            t["f_ef_GHz"] = *c.targets->f_ef_GHz;
        }
    }
    t["ng"] = c.ng;
    t["truncation"] = c.truncation;
    doc["transmon"] = t;
    if (c.cavity) {
        doc["cavity"] = {{"g_MHz", c.cavity->g_MHz},
                         {"nu_r_GHz", c.cavity->nu_r_GHz},
                         {"Q_loaded", c.cavity->Q_loaded}};
    }
    doc["bcs_ratio"] = c.bcs_ratio;
    json table = json::array();
    for (const auto& [thickness, tc] : c.thickness_table.anchors) {
        table.push_back({thickness, tc});
    }
    doc["thickness_table"] = table;
    if (c.gap_profile) {
        doc["gap_profile"] = *c.gap_profile;
    }
    json q;
    if (c.x_nqp_given) {
        q["x_nqp"] = c.qp.x_nqp;
    }
    q["D_m2_per_s"] = c.qp.D_m2_per_s;
    json anchors = json::array();
    for (const auto& a : c.qp.tau_anchors) {
        anchors.push_back({a.energy_K, a.tau_s});
    }
    q["tau_anchors"] = anchors;
    q["xi_um"] = c.qp.xi_um;
    q["nu0_per_eV_um3"] = c.qp.nu0_per_eV_um3;
    q["T_qp_K"] = c.qp.T_qp_K;
    doc["qp_environment"] = q;
    json m = json::object();
    if (c.measured.t1_us) {
        m["t1_us"] = *c.measured.t1_us;
    }
    if (c.measured.tc_K) {
        m["tc_K"] = *c.measured.tc_K;
    }
    doc["measured"] = m;
    json n;
    if (c.noise.gamma_parity_per_s) {
        n["gamma_parity_per_s"] = *c.noise.gamma_parity_per_s;
    }
    n["tls_rate_per_s"] = c.noise.tls_rate_per_s;
    n["jump_max"] = c.noise.jump_max;
    n["temperature_K"] = c.noise.temperature_K;
    n["base_rate_per_s"] = c.noise.rate.base_rate_per_s;
    n["c_th_per_s"] = c.noise.rate.c_th_per_s;
    n["barrier_safety"] = c.noise.rate.barrier_safety;
    doc["noise"] = n;
    json sp;
    sp["linewidth_MHz"] = c.spectroscopy.linewidth_MHz;
    sp["snr"] = c.spectroscopy.snr;
    sp["pixel_time_s"] = c.spectroscopy.pixel_time_s;
    sp["repetitions"] = c.spectroscopy.repetitions;
    sp["duration_s"] = c.spectroscopy.duration_s;
    if (c.spectroscopy.n_freq != 0) {
        sp["f_min_GHz"] = *c.spectroscopy.f_min_GHz;
        sp["f_max_GHz"] = *c.spectroscopy.f_max_GHz;
        sp["n_freq"] = c.spectroscopy.n_freq;
    }
    doc["spectroscopy"] = sp;
    if (c.t1_model) {
        doc["t1_model"] = {{"gamma_plateau_per_s", c.t1_model->gamma_plateau_per_s},
                           {"tc_K", c.t1_model->tc_K},
                           {"amplitude_per_s", c.t1_model->amplitude_per_s}};
    }
    json d = json::object();
    if (c.dephasing.chi_MHz) {
        d["chi_MHz"] = *c.dephasing.chi_MHz;
    }
    if (c.dephasing.kappa_MHz) {
        d["kappa_MHz"] = *c.dephasing.kappa_MHz;
    }
    doc["dephasing"] = d;
    doc["seed"] = c.seed;
    return doc;
}

std::string config_digest(const DeviceConfig& config) {
    return hex_digest(fnv1a64(to_json(config).dump()));
}

ResolvedTransmon resolve_transmon(const DeviceConfig& config) {
    if (config.transmon) {
        return {*config.transmon, std::nullopt};
    }
    const EjEcFit fit = fit_ej_ec(*config.targets);
    TransmonParams p = fit.params;
    p.ng = config.ng;
    p.truncation = config.truncation;
    return {p, fit};
}

GapProfile resolve_profile(const DeviceConfig& config) {
    if (!config.gap_profile) {
        throw ConfigError("config has no 'gap_profile' section");
    }
    return gap_profile_from_json(*config.gap_profile, config.thickness_table, config.bcs_ratio);
}

GapSource resolve_delta(const DeviceConfig& config) {
    if (config.measured.tc_K) {
        return {delta_from_tc(*config.measured.tc_K, config.bcs_ratio),
                "measured Tc " + format_number(*config.measured.tc_K) + " K"};
    }
    if (config.gap_profile) {
        return {resolve_profile(config).junction_gap_K(), "junction gap of the profile"};
    }
    throw ConfigError("need measured.tc_K or a gap_profile to fix the gap");
}

T1ModelParams resolve_t1_model(const DeviceConfig& config) {
    if (config.t1_model) {
        return *config.t1_model;
    }
    if (!config.measured.t1_us || !config.measured.tc_K) {
        throw ConfigError("need a t1_model section, or measured.t1_us and measured.tc_K");
    }
    const TransmonParams p = resolve_transmon(config).params;
    if (p.EJ_GHz <= 0.0) {
        throw ConfigError("deriving a T1 model needs EJ > 0");
    }
    const double f_ge = 0.5 * (transition_frequency(p.with_ng(0.0), Transition::ge) +
                               transition_frequency(p.with_ng(0.5), Transition::ge));
    const double delta_GHz = kelvin_to_ghz(delta_from_tc(*config.measured.tc_K, config.bcs_ratio));
    T1ModelParams m;
    m.gamma_plateau_per_s = 1.0 / (*config.measured.t1_us * constants::s_per_us);
    m.tc_K = *config.measured.tc_K;
    m.amplitude_per_s = nqp_decay_rate(p.EJ_GHz, p.EC_GHz, f_ge, delta_GHz, 1.0);
    return m;
}

}  // namespace gapqp::cli
