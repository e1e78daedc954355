#pragma once

#include <functional>
#include <limits>

namespace gapqp {

struct IntegrationOptions {
    double rel_tol = 1e-9;
    unsigned max_depth = 30;
};

/// Adaptive Gauss-Kronrod integral of f over [a, b]. Either bound may be
/// infinite. Throws ConvergenceError when the error estimate stays above
/// rel_tol * |result|.
double adaptive_integral(const std::function<double(double)>& f, double a, double b,
                         const IntegrationOptions& options = {});

struct RootOptions {
    double abs_tol = 1e-10;
    unsigned max_iterations = 200;
};

/// Bracketed root of f on [lo, hi]. Throws BracketError when f(lo) and f(hi)
/// share a sign, ConvergenceError on iteration exhaustion.
double root_find(const std::function<double(double)>& f, double lo, double hi,
                 const RootOptions& options = {});

/// Integral of the BCS density of states times a Boltzmann factor,
///     int_{lower}^{inf} rho(E; Delta) exp(-(E - Delta) / T) dE,
/// with lower >= Delta, evaluated after the substitution E = Delta cosh(u).
/// The exp(-Delta / T) factor is left out so the result stays representable
/// deep in the gap; multiply it back in when needed.
double bcs_boltzmann_integral(double delta_K, double T_K, double lower_K,
                              const IntegrationOptions& options = {});

}  // namespace gapqp
