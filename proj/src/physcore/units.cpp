#include "gapqp/physcore/units.hpp"

#include "gapqp/physcore/constants.hpp"

namespace gapqp {

std::string_view to_string(EnergyUnit unit) {
    switch (unit) {
    case EnergyUnit::GHz:
        return "GHz";
    case EnergyUnit::kelvin:
        return "K";
    case EnergyUnit::eV:
        return "eV";
    }
    return "?";
}

double kelvin_to_ghz(double kelvin) { return kelvin * constants::kB_over_h; }
double ghz_to_kelvin(double ghz) { return ghz * constants::h_over_kB; }
double kelvin_to_ev(double kelvin) { return kelvin * constants::kB_in_eV; }
double ev_to_kelvin(double ev) { return ev / constants::kB_in_eV; }
double ghz_to_ev(double ghz) { return ghz * constants::h_in_eV_per_GHz; }
double ev_to_ghz(double ev) { return ev / constants::h_in_eV_per_GHz; }

EnergyValue EnergyValue::to(EnergyUnit target) const {
    if (target == unit_) {
        return *this;
    }
    // Pivot through kelvin.
    double k = 0.0;
    switch (unit_) {
    case EnergyUnit::GHz:
        k = ghz_to_kelvin(value_);
        break;
    case EnergyUnit::kelvin:
        k = value_;
        break;
    case EnergyUnit::eV:
        k = ev_to_kelvin(value_);
        break;
    }
    switch (target) {
    case EnergyUnit::GHz:
        return {kelvin_to_ghz(k), target};
    case EnergyUnit::kelvin:
        return {k, target};
    case EnergyUnit::eV:
        return {kelvin_to_ev(k), target};
    }
    return {k, EnergyUnit::kelvin};
}

}  // namespace gapqp
