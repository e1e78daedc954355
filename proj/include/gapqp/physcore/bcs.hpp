#pragma once

#include "gapqp/physcore/constants.hpp"

namespace gapqp {

/// BCS gap from the critical temperature, both in kelvin.
/// Throws DomainError for tc <= 0.
double delta_from_tc(double tc_K, double ratio = constants::bcs_ratio);

/// Inverse of delta_from_tc.
double tc_from_delta(double delta_K, double ratio = constants::bcs_ratio);

/// Normalized BCS quasiparticle density of states E / sqrt(E^2 - Delta^2);
/// zero at and below the gap.
double bcs_dos(double energy_K, double delta_K);

/// Bose-Einstein occupation of a mode at frequency f (GHz) and temperature T (K).
/// Evaluated as exp(-x) / (1 - exp(-x)) so that T -> 0 underflows to zero
/// instead of overflowing.
double bose_occupation(double f_GHz, double T_K);

/// Natural log of bose_occupation; finite for arbitrarily small T.
double log_bose_occupation(double f_GHz, double T_K);

/// Temperature at which a mode at f_GHz carries n_th photons. n_th = 0 maps to 0 K.
double temperature_from_occupation(double n_th, double f_GHz);

/// Thermal excited-state population of a two-level system.
double two_level_population(double f_ge_GHz, double T_K);

/// Closed-form inverse of two_level_population. Requires 0 < P_e < 0.5.
double temperature_from_population(double p_excited, double f_ge_GHz);

}  // namespace gapqp
