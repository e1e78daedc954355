#include "gapqp/transmon/transmon.hpp"

#include "gapqp/physcore/constants.hpp"
#include "gapqp/physcore/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gapqp {

int min_truncation(double EJ_GHz, double EC_GHz) {
    return static_cast<int>(std::ceil(5.0 * std::sqrt(EJ_GHz / (8.0 * EC_GHz)))) + 10;
}

void TransmonParams::validate() const {
    if (!(EC_GHz > 0.0) || !std::isfinite(EC_GHz)) {
        throw DomainError("transmon: EC must be positive, got " + std::to_string(EC_GHz));
    }
    if (!(EJ_GHz >= 0.0) || !std::isfinite(EJ_GHz)) {
        throw DomainError("transmon: EJ must be non-negative, got " + std::to_string(EJ_GHz));
    }
    if (!std::isfinite(ng)) {
        throw DomainError("transmon: offset charge must be finite");
    }
}

int TransmonParams::effective_truncation() const {
    return std::max(truncation, min_truncation(EJ_GHz, EC_GHz));
}

TransmonParams TransmonParams::with_ng(double new_ng) const {
    TransmonParams p = *this;
    p.ng = new_ng;
    return p;
}

SymTridiagonal build_hamiltonian(const TransmonParams& params) {
    params.validate();
    const int n_max = params.effective_truncation();
    // Reduce the offset charge into [0, 1); the spectrum is periodic in ng and the
    // shifted basis keeps the charge window centred on the low-lying states.
    const double ng = params.ng - std::floor(params.ng);
    SymTridiagonal h;
    h.diagonal.reserve(std::size_t(2 * n_max + 1));
    for (int n = -n_max; n <= n_max; ++n) {
        const double q = double(n) - ng;
        h.diagonal.push_back(4.0 * params.EC_GHz * q * q);
    }
    h.off_diagonal.assign(std::size_t(2 * n_max), -0.5 * params.EJ_GHz);
    return h;
}

double Spectrum::transition(std::size_t lower, std::size_t upper) const {
    if (upper >= energies.size() || lower >= energies.size()) {
        throw DomainError("Spectrum::transition: level index beyond computed spectrum");
    }
    return energies[upper] - energies[lower];
}

Spectrum eigenspectrum(const TransmonParams& params, std::size_t k) {
    const SymTridiagonal h = build_hamiltonian(params);
    if (k > h.size()) {
        throw DomainError("eigenspectrum: k = " + std::to_string(k) + " exceeds basis dimension " +
                          std::to_string(h.size()));
    }
    Spectrum s;
    s.energies = lowest_eigenvalues(h, k);
    s.params = params;
    for (double e : s.energies) {
        if (!std::isfinite(e)) {
            throw NumericalError("eigenspectrum: non-finite eigenvalue for EJ = " +
                                 std::to_string(params.EJ_GHz) + ", EC = " +
                                 std::to_string(params.EC_GHz));
        }
    }
    return s;
}

double transition_frequency(const TransmonParams& params, Transition transition) {
    const Spectrum s = eigenspectrum(params, 3);
    return transition == Transition::ge ? s.f_ge() : s.f_ef();
}

double charge_dispersion(const TransmonParams& params, Transition transition) {
    return std::abs(transition_frequency(params.with_ng(0.5), transition) -
                    transition_frequency(params.with_ng(0.0), transition));
}

double ParityFrequencies::splitting() const { return std::abs(even_GHz - odd_GHz); }

ParityFrequencies parity_frequencies(const TransmonParams& params) {
    return {transition_frequency(params, Transition::ge),
            transition_frequency(params.with_ng(params.ng + 0.5), Transition::ge)};
}

ChargeBasisStates charge_matrix_elements(const TransmonParams& params, std::size_t k) {
    const SymTridiagonal h = build_hamiltonian(params);
    if (k > h.size()) {
        throw DomainError("charge_matrix_elements: k exceeds basis dimension");
    }
    const EigenSystem es = eigensystem_ql(h);
    const int n_max = params.effective_truncation();
    const double ng = params.ng - std::floor(params.ng);
    Eigen::VectorXd charge(h.size());
    for (int n = -n_max; n <= n_max; ++n) {
        charge(n + n_max) = double(n) - ng;
    }
    const auto kk = static_cast<Eigen::Index>(k);
    const Eigen::MatrixXd v = es.vectors.leftCols(kk);
    Eigen::MatrixXd elements = (v.transpose() * charge.asDiagonal() * v).cwiseAbs();
    // Exact symmetry regardless of rounding in the product.
    elements = 0.5 * (elements + elements.transpose()).eval();

    ChargeBasisStates out;
    out.energies = lowest_eigenvalues(h, k);
    out.charge_elements = std::move(elements);
    return out;
}

double ej_from_ab(double rn_ohm, double delta_GHz) {
    if (!(rn_ohm > 0.0) || !(delta_GHz > 0.0)) {
        throw DomainError("ej_from_ab: resistance and gap must be positive");
    }
    return delta_GHz / 8.0 * (constants::RK / rn_ohm);
}

double rn_from_ab(double EJ_GHz, double delta_GHz) {
    if (!(EJ_GHz > 0.0) || !(delta_GHz > 0.0)) {
        throw DomainError("rn_from_ab: EJ and gap must be positive");
    }
    return delta_GHz / 8.0 * constants::RK / EJ_GHz;
}

}  // namespace gapqp
