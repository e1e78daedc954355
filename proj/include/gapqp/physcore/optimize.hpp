#pragma once

#include <functional>
#include <vector>

namespace gapqp {

struct NelderMeadOptions {
    int max_iterations = 4000;
    double f_tol = 1e-24;     // absolute spread of objective values across the simplex
    double x_tol = 1e-12;     // simplex diameter
    double initial_step = 0.05;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Derivative-free simplex minimization with standard coefficients
/// (reflection 1, expansion 2, contraction 0.5, shrink 0.5). Deterministic.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options = {});

}  // namespace gapqp
