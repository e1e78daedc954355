#pragma once

#include "gapqp/transmon/tridiagonal.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace gapqp {

/// Single-junction transmon in the charge basis, n in [-N, N].
/// Energies in GHz; ng is the offset charge in units of 2e.
struct TransmonParams {
    double EJ_GHz = 0.0;
    double EC_GHz = 0.0;
    double ng = 0.0;
    int truncation = 0;  // user request; raised to min_truncation() when smaller

    /// Throws DomainError unless EJ >= 0 and EC > 0.
    void validate() const;
    [[nodiscard]] int effective_truncation() const;
    [[nodiscard]] std::size_t dimension() const { return 2 * std::size_t(effective_truncation()) + 1; }
    [[nodiscard]] TransmonParams with_ng(double new_ng) const;
};

/// ceil(5 * sqrt(EJ / 8EC)) + 10
int min_truncation(double EJ_GHz, double EC_GHz);

/// H = 4 EC (n - ng)^2 - EJ/2 (|n><n+1| + h.c.)
SymTridiagonal build_hamiltonian(const TransmonParams& params);

struct Spectrum {
    std::vector<double> energies;  // GHz, ascending
    TransmonParams params;

    /// energies[upper] - energies[lower]
    [[nodiscard]] double transition(std::size_t lower, std::size_t upper) const;
    [[nodiscard]] double f_ge() const { return transition(0, 1); }
    [[nodiscard]] double f_ef() const { return transition(1, 2); }
};

/// Lowest k levels. Throws DomainError when k exceeds the basis dimension.
Spectrum eigenspectrum(const TransmonParams& params, std::size_t k);

enum class Transition { ge, ef };

double transition_frequency(const TransmonParams& params, Transition transition);

/// |f(ng = 0.5) - f(ng = 0)| for the given transition, GHz.
double charge_dispersion(const TransmonParams& params, Transition transition = Transition::ge);

struct ParityFrequencies {
    double even_GHz;  // f_ge at ng
    double odd_GHz;   // f_ge at ng + 0.5 (one extra electron)
    [[nodiscard]] double splitting() const;
};

ParityFrequencies parity_frequencies(const TransmonParams& params);

/// Eigenstates of the lowest k levels with the charge operator in that basis.
struct ChargeBasisStates {
    std::vector<double> energies;   // GHz, ascending, size k
    Eigen::MatrixXd charge_elements;  // |<i| n - ng |j>|, k x k, symmetric
};

ChargeBasisStates charge_matrix_elements(const TransmonParams& params, std::size_t k);

/// Ambegaokar-Baratoff Josephson energy of a symmetric-gap junction,
/// EJ = (Delta / 8) (R_K / R_n). Delta and the result in GHz.
double ej_from_ab(double rn_ohm, double delta_GHz);

/// Normal-state resistance giving a target EJ; inverse of ej_from_ab.
double rn_from_ab(double EJ_GHz, double delta_GHz);

}  // namespace gapqp
