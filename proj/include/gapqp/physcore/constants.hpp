#pragma once

// Unit system. Temperatures and gaps are carried in kelvin (k_B = 1),
// transmon energies in GHz (h = 1). Every conversion goes through the
// constants below.

namespace gapqp::constants {

/// Boltzmann constant over Planck constant, GHz per kelvin.
inline constexpr double kB_over_h = 20.83661912;
/// Planck constant over Boltzmann constant, kelvin per GHz.
inline constexpr double h_over_kB = 1.0 / kB_over_h;
/// Boltzmann constant, eV per kelvin.
inline constexpr double kB_in_eV = 8.617333262e-5;
/// Planck constant, eV per GHz.
inline constexpr double h_in_eV_per_GHz = kB_in_eV / kB_over_h;
/// von Klitzing resistance h/e^2, ohm.
inline constexpr double RK = 25812.80745;
/// Weak-coupling BCS ratio Delta / (k_B Tc).
inline constexpr double bcs_ratio = 1.764;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Scale factors used by the unit-suffixed APIs.
inline constexpr double hz_per_ghz = 1e9;
inline constexpr double hz_per_mhz = 1e6;
inline constexpr double mhz_per_ghz = 1e3;
inline constexpr double khz_per_mhz = 1e3;
inline constexpr double um_per_m = 1e6;
inline constexpr double s_per_us = 1e-6;

}  // namespace gapqp::constants
