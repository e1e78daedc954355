#pragma once

#include <string_view>

namespace gapqp {

enum class EnergyUnit { GHz, kelvin, eV };

std::string_view to_string(EnergyUnit unit);

/// An energy tagged with its unit. Conversions are pure functions of the
/// constants in constants.hpp.
class EnergyValue {
public:
    constexpr EnergyValue(double value, EnergyUnit unit) : value_(value), unit_(unit) {}

    static constexpr EnergyValue ghz(double v) { return {v, EnergyUnit::GHz}; }
    static constexpr EnergyValue kelvin(double v) { return {v, EnergyUnit::kelvin}; }
    static constexpr EnergyValue ev(double v) { return {v, EnergyUnit::eV}; }

    [[nodiscard]] constexpr double value() const { return value_; }
    [[nodiscard]] constexpr EnergyUnit unit() const { return unit_; }

    [[nodiscard]] EnergyValue to(EnergyUnit target) const;
    [[nodiscard]] double in(EnergyUnit target) const { return to(target).value(); }

private:
    double value_;
    EnergyUnit unit_;
};

double kelvin_to_ghz(double kelvin);
double ghz_to_kelvin(double ghz);
double kelvin_to_ev(double kelvin);
double ev_to_kelvin(double ev);
double ghz_to_ev(double ghz);
double ev_to_ghz(double ev);

}  // namespace gapqp
