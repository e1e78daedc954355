#include "gapqp/quasiparticle/gap_profile.hpp"

#include "gapqp/physcore/bcs.hpp"
#include "gapqp/physcore/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gapqp {

ThicknessTcTable ThicknessTcTable::aluminum_default() {
    return ThicknessTcTable{{{20.0, 1.6}, {25.0, 1.6}, {40.0, 1.3}}};
}

void ThicknessTcTable::validate() const {
    if (anchors.empty()) {
        throw ConfigError("thickness table is empty");
    }
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        const auto [t, tc] = anchors[i];
        if (!(t > 0.0) || !(tc > 0.0)) {
            throw ConfigError("thickness table entry " + std::to_string(i) +
                              " must have positive thickness and Tc");
        }
        if (i > 0) {
            if (!(t > anchors[i - 1].first)) {
                throw ConfigError("thickness table must be strictly ascending in thickness");
            }
            if (tc > anchors[i - 1].second) {
                throw ConfigError("thickness table: Tc must not increase with thickness");
            }
        }
    }
}

double tc_from_thickness(double thickness_nm, const ThicknessTcTable& table) {
    table.validate();
    if (!(thickness_nm > 0.0)) {
        throw DomainError("tc_from_thickness: thickness must be positive");
    }
    const auto& a = table.anchors;
    if (thickness_nm <= a.front().first) {
        return a.front().second;
    }
    if (thickness_nm >= a.back().first) {
        return a.back().second;
    }
    const auto hi = std::upper_bound(a.begin(), a.end(), thickness_nm,
                                     [](double t, const auto& p) { return t < p.first; });
    const auto lo = hi - 1;
    const double w = (thickness_nm - lo->first) / (hi->first - lo->first);
    return lo->second + w * (hi->second - lo->second);
}

GapProfile::GapProfile(std::vector<GapSegment> segments, double junction_um)
    : segments_(std::move(segments)), junction_um_(junction_um) {
    if (segments_.size() < 2) {
        throw GeometryError("gap profile needs at least one segment on each side of the junction");
    }
    double x = 0.0;
    const double total = total_length_um();
    const double tol = 1e-9 * std::max(1.0, total);
    bool found = false;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& s = segments_[i];
        if (!(s.length_um > 0.0) || !(s.delta_K > 0.0)) {
            throw GeometryError("gap profile segment " + std::to_string(i) +
                                " needs positive length and gap");
        }
        x += s.length_um;
        if (i + 1 < segments_.size() && std::abs(x - junction_um_) <= tol) {
            junction_index_ = i + 1;
            junction_um_ = x;
            found = true;
        }
    }
    if (!found) {
        throw GeometryError("junction at " + std::to_string(junction_um) +
                            " um is not an interior segment boundary");
    }
}

double GapProfile::total_length_um() const {
    double total = 0.0;
    for (const auto& s : segments_) {
        total += s.length_um;
    }
    return total;
}

std::vector<GapSegment> GapProfile::side(Side s) const {
    if (s == Side::left) {
        std::vector<GapSegment> out(segments_.begin(),
                                    segments_.begin() + std::ptrdiff_t(junction_index_));
        std::reverse(out.begin(), out.end());
        return out;
    }
    return {segments_.begin() + std::ptrdiff_t(junction_index_), segments_.end()};
}

const GapSegment& GapProfile::adjacent(Side s) const {
    return s == Side::left ? segments_[junction_index_ - 1] : segments_[junction_index_];
}

double GapProfile::side_min_gap_K(Side s) const {
    double m = adjacent(s).delta_K;
    for (const auto& seg : side(s)) {
        m = std::min(m, seg.delta_K);
    }
    return m;
}

double GapProfile::side_max_gap_K(Side s) const {
    double m = adjacent(s).delta_K;
    for (const auto& seg : side(s)) {
        m = std::max(m, seg.delta_K);
    }
    return m;
}

double GapProfile::barrier_height_K(Side s) const {
    return adjacent(s).delta_K - side_min_gap_K(s);
}

double GapProfile::junction_gap_K() const {
    return std::min(adjacent(Side::left).delta_K, adjacent(Side::right).delta_K);
}

double GapProfile::junction_adjacent_max_gap_K() const {
    return std::max(adjacent(Side::left).delta_K, adjacent(Side::right).delta_K);
}

double GapProfile::gap_at(double x_um) const {
    double x = 0.0;
    for (const auto& s : segments_) {
        x += s.length_um;
        if (x_um < x) {
            return s.delta_K;
        }
    }
    return segments_.back().delta_K;
}

GapProfile profile_from_stack(const std::vector<StackSegment>& stack, std::size_t junction_index,
                              const ThicknessTcTable& table, double bcs_ratio) {
    if (junction_index == 0 || junction_index >= stack.size()) {
        throw GeometryError("profile_from_stack: junction index " + std::to_string(junction_index) +
                            " leaves a side of the junction empty");
    }
    std::vector<GapSegment> segments;
    segments.reserve(stack.size());
    double junction_um = 0.0;
    for (std::size_t i = 0; i < stack.size(); ++i) {
        const auto& s = stack[i];
        if (s.thickness_nm.has_value() == s.delta_K.has_value()) {
            throw ConfigError("stack segment " + std::to_string(i) +
                              " needs exactly one of thickness_nm or delta_K");
        }
        const double delta = s.delta_K ? *s.delta_K
                                        : delta_from_tc(tc_from_thickness(*s.thickness_nm, table),
                                                        bcs_ratio);
        segments.push_back({s.length_um, delta});
        if (i < junction_index) {
            junction_um += s.length_um;
        }
    }
    return GapProfile(std::move(segments), junction_um);
}

std::vector<StackSegment> protected_stack(double reservoir_um) {
    return {{reservoir_um, 40.0, std::nullopt},
            {3.0, 25.0, std::nullopt},
            {reservoir_um, 60.0, std::nullopt}};
}

std::vector<StackSegment> unprotected_stack(double reservoir_um) {
    return {{reservoir_um, 25.0, std::nullopt},
            {3.0, 25.0, std::nullopt},
            {reservoir_um, 60.0, std::nullopt}};
}

nlohmann::json to_json(const GapProfile& profile) {
    nlohmann::json segs = nlohmann::json::array();
    for (const auto& s : profile.segments()) {
        segs.push_back({{"length_um", s.length_um}, {"delta_K", s.delta_K}});
    }
    return {{"segments", segs}, {"junction_um", profile.junction_um()}};
}

GapProfile gap_profile_from_json(const nlohmann::json& doc, const ThicknessTcTable& table,
                                 double bcs_ratio) {
    if (!doc.is_object() || !doc.contains("segments") || !doc["segments"].is_array()) {
        throw ConfigError("gap profile: expected an object with a 'segments' array");
    }
    if (!doc.contains("junction_um") || !doc["junction_um"].is_number()) {
        throw ConfigError("gap profile: missing numeric 'junction_um'");
    }
    std::vector<StackSegment> stack;
    for (const auto& s : doc["segments"]) {
        if (!s.contains("length_um") || !s["length_um"].is_number()) {
            throw ConfigError("gap profile: every segment needs a numeric 'length_um'");
        }
        StackSegment seg;
        seg.length_um = s["length_um"].get<double>();
        if (s.contains("thickness_nm")) {
            seg.thickness_nm = s["thickness_nm"].get<double>();
        }
        if (s.contains("delta_K")) {
            seg.delta_K = s["delta_K"].get<double>();
        }
        stack.push_back(seg);
    }
    // Locate the junction boundary by cumulative length.
    const double junction = doc["junction_um"].get<double>();
    double x = 0.0;
    double total = 0.0;
    for (const auto& s : stack) {
        total += s.length_um;
    }
    const double tol = 1e-9 * std::max(1.0, total);
    for (std::size_t i = 0; i + 1 < stack.size(); ++i) {
        x += stack[i].length_um;
        if (std::abs(x - junction) <= tol) {
            return profile_from_stack(stack, i + 1, table, bcs_ratio);
        }
    }
    throw GeometryError("gap profile: junction at " + std::to_string(junction) +
                        " um is not an interior segment boundary");
}

}  // namespace gapqp
