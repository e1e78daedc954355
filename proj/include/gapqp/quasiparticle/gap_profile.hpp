#pragma once

#include "gapqp/physcore/constants.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace gapqp {

/// Thickness -> Tc lookup, piecewise linear and clamped at both ends.
struct ThicknessTcTable {
    std::vector<std::pair<double, double>> anchors;  // (thickness nm, Tc K), ascending thickness

    /// 20 nm and 25 nm -> 1.6 K, 40 nm and thicker -> 1.3 K.
    static ThicknessTcTable aluminum_default();
    /// Throws ConfigError for an empty table, unsorted thicknesses, or Tc rising with thickness.
    void validate() const;
};

/// Throws DomainError for t <= 0, ConfigError for an invalid table.
double tc_from_thickness(double thickness_nm, const ThicknessTcTable& table);

struct GapSegment {
    double length_um = 0.0;
    double delta_K = 0.0;
};

enum class Side { left, right };

/// Piecewise-constant gap along a 1D path through the junction. The junction
/// sits on a segment boundary with at least one segment on each side.
class GapProfile {
public:
    /// Throws GeometryError when lengths/gaps are non-positive or the junction
    /// is not an interior segment boundary.
    GapProfile(std::vector<GapSegment> segments, double junction_um);

    [[nodiscard]] const std::vector<GapSegment>& segments() const { return segments_; }
    [[nodiscard]] double junction_um() const { return junction_um_; }
    [[nodiscard]] double total_length_um() const;
    /// Number of segments left of the junction.
    [[nodiscard]] std::size_t junction_index() const { return junction_index_; }

    /// Segments of one side, ordered from the junction outward.
    [[nodiscard]] std::vector<GapSegment> side(Side s) const;
    [[nodiscard]] const GapSegment& adjacent(Side s) const;
    [[nodiscard]] double side_min_gap_K(Side s) const;
    [[nodiscard]] double side_max_gap_K(Side s) const;
    /// Gap of the junction-adjacent segment minus the smallest gap on that side.
    [[nodiscard]] double barrier_height_K(Side s) const;
    /// The junction gap is taken as the smaller of the two electrode gaps.
    [[nodiscard]] double junction_gap_K() const;
    [[nodiscard]] double junction_adjacent_max_gap_K() const;
    /// Gap at position x (um); boundaries belong to the segment on their right.
    [[nodiscard]] double gap_at(double x_um) const;

private:
    std::vector<GapSegment> segments_;
    double junction_um_;
    std::size_t junction_index_ = 0;
};

/// One fabricated segment: a film thickness to map through the table, or an
/// explicit gap.
struct StackSegment {
    double length_um = 0.0;
    std::optional<double> thickness_nm;
    std::optional<double> delta_K;
};

/// Maps each segment's thickness -> Tc -> Delta. The junction sits after
/// segment `junction_index - 1`. Throws GeometryError when the index leaves a
/// side empty, ConfigError when a segment has neither or both of thickness/gap.
GapProfile profile_from_stack(const std::vector<StackSegment>& stack, std::size_t junction_index,
                              const ThicknessTcTable& table = ThicknessTcTable::aluminum_default(),
                              double bcs_ratio = constants::bcs_ratio);

/// The gap-engineered stack: thick underlayer region, 3 um thin high-gap strip,
/// junction, thick top electrode.
std::vector<StackSegment> protected_stack(double reservoir_um = 100.0);
/// Same geometry without the underlayer: the whole bottom electrode is thin film.
std::vector<StackSegment> unprotected_stack(double reservoir_um = 100.0);

// JSON document: {"segments": [{"length_um": .., "thickness_nm"|"delta_K": ..}, ...],
//                 "junction_um": ..}
nlohmann::json to_json(const GapProfile& profile);
/// Reads either resolved (delta_K) or fabrication (thickness_nm) segments.
GapProfile gap_profile_from_json(const nlohmann::json& doc,
                                 const ThicknessTcTable& table = ThicknessTcTable::aluminum_default(),
                                 double bcs_ratio = constants::bcs_ratio);

}  // namespace gapqp
