#pragma once

#include "gapqp/quasiparticle/environment.hpp"

namespace gapqp {

/// Thermal part of the reduced QP density, sqrt(2 pi T / Delta) exp(-Delta / T).
double thermal_qp_term(double T_K, double delta_K);

/// x_QP(T) = x_nqp + thermal_qp_term(T, Delta).
double thermal_qp_fraction(double T_K, double delta_K, double x_nqp);

/// Temperature where the thermal term equals x_nqp, searched on [10 mK, Delta/2].
/// Throws DomainError for x_nqp <= 0 or when no crossing lies in the bracket.
double crossover_temperature(double x_nqp, double delta_K);

/// Transmon decay rate from NQP tunnelling (s^-1):
///   Gamma = 32 EJ sqrt(Delta / 2 f_ge) sqrt(EC / 8 EJ) x_qp,
/// with EJ taken in Hz. All energy arguments in GHz.
double nqp_decay_rate(double EJ_GHz, double EC_GHz, double f_ge_GHz, double delta_GHz, double x_qp);

/// Exact inverse of nqp_decay_rate in x_qp.
double x_from_rate(double gamma_per_s, double EJ_GHz, double EC_GHz, double f_ge_GHz,
                   double delta_GHz);

/// QP number density n = 2 nu0 Delta x (per um^3), nu0 per spin in eV^-1 um^-3.
double volume_density(double x_qp, double nu0_per_eV_um3, double delta_eV);
double x_from_volume_density(double n_per_um3, double nu0_per_eV_um3, double delta_eV);

/// Energy relaxation time at energy E above the gap: power law through the
/// environment's anchors (log-log interpolation between neighbouring anchors,
/// end segments extrapolated).
double tau_eps(double energy_K, const QPEnvironment& env);

/// Exponent p of tau ~ E^-p between the first two anchors.
double tau_power_law_exponent(const QPEnvironment& env);

/// L = sqrt(D tau_eps(E)), in um.
double diffusion_length_um(double energy_K, const QPEnvironment& env);

/// Fraction of a gap-edge Boltzmann QP population (effective temperature T_qp)
/// with energy above Delta + delta_delta:
///   int_{Delta+dD}^inf rho e^{-E/T} dE / int_Delta^inf rho e^{-E/T} dE.
double above_barrier_fraction(double barrier_K, double T_qp_K, double delta_K);

}  // namespace gapqp
