#pragma once

#include "gapqp/physcore/errors.hpp"
#include "gapqp/transmon/transmon.hpp"

#include <optional>

namespace gapqp {

/// Two targets pin only one parameter combination.
class UnderdeterminedError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Measured spectroscopy targets. The f_ge pair is the range swept by the
/// offset charge, i.e. its values at ng = 0 and ng = 0.5 in either order.
/// f_ef, when present, is the ng-midpoint of the ef transition.
struct FrequencyTargets {
    double f_ge_low_GHz = 0.0;
    double f_ge_high_GHz = 0.0;
    std::optional<double> f_ef_GHz;
};

struct EjEcFit {
    TransmonParams params;
    double max_residual_kHz = 0.0;
    int iterations = 0;
};

struct EjEcFitOptions {
    int max_iterations = 4000;
};

/// Nelder-Mead over (ln EJ, ln EC) from a perturbative seed.
/// Throws PreconditionError for inconsistent targets, UnderdeterminedError when
/// the dispersion vanishes and no f_ef is given, ConvergenceError when the
/// simplex does not settle.
EjEcFit fit_ej_ec(const FrequencyTargets& targets, const EjEcFitOptions& options = {});

/// Targets a given parameter set would produce (for round trips and tests).
FrequencyTargets targets_from_params(const TransmonParams& params, bool include_ef);

}  // namespace gapqp
