#include "gapqp/physcore/numerics.hpp"

#include "gapqp/physcore/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace gapqp {

double adaptive_integral(const std::function<double(double)>& f, double a, double b,
                         const IntegrationOptions& options) {
    if (a == b) {
        return 0.0;
    }
    double error = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, options.max_depth, options.rel_tol, &error, &l1);
    if (!std::isfinite(value)) {
        throw NumericalError("adaptive_integral: non-finite result");
    }
    // Boost reports the error relative to the L1 norm; compare against it the
    // same way so that integrands with cancellation are judged fairly.
    if (error > options.rel_tol * std::max(std::abs(value), l1) && error > 0.0) {
        throw ConvergenceError("adaptive_integral: error estimate " + std::to_string(error) +
                               " exceeds tolerance after " + std::to_string(options.max_depth) +
                               " levels");
    }
    return value;
}

double root_find(const std::function<double(double)>& f, double lo, double hi,
                 const RootOptions& options) {
    if (lo > hi) {
        std::swap(lo, hi);
    }
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) {
        return lo;
    }
    if (f_hi == 0.0) {
        return hi;
    }
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw BracketError("root_find: no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    }
    const double tol = options.abs_tol;
    auto done = [tol](double x, double y) { return std::abs(y - x) <= tol; };
    std::uintmax_t iterations = options.max_iterations;
    const auto bracket =
        boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, done, iterations);
    if (!done(bracket.first, bracket.second)) {
        throw ConvergenceError("root_find: bracket [" + std::to_string(bracket.first) + ", " +
                               std::to_string(bracket.second) + "] after " +
                               std::to_string(iterations) + " iterations");
    }
    return 0.5 * (bracket.first + bracket.second);
}

double bcs_boltzmann_integral(double delta_K, double T_K, double lower_K,
                              const IntegrationOptions& options) {
    if (!(delta_K > 0.0) || !(T_K > 0.0)) {
        throw DomainError("bcs_boltzmann_integral: gap and temperature must be positive");
    }
    if (lower_K < delta_K) {
        lower_K = delta_K;
    }
    // E = Delta cosh(u): rho(E) dE = Delta cosh(u) du, no edge singularity.
    const double cosh_lo = lower_K / delta_K;
    const double u_lo = std::acosh(cosh_lo);
    const double prefactor = std::exp(-(lower_K - delta_K) / T_K);
    if (prefactor == 0.0) {
        return 0.0;
    }
    // Integrand below exp(-740) relative to the lower edge is irrelevant.
    const double u_hi = std::acosh(cosh_lo + 740.0 * T_K / delta_K);
    const double scale = delta_K / T_K;
    auto integrand = [=](double u) {
        const double c = std::cosh(u);
        return delta_K * c * std::exp(-scale * (c - cosh_lo));
    };
    return prefactor * adaptive_integral(integrand, u_lo, u_hi, options);
}

}  // namespace gapqp
