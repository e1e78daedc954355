#pragma once

#include "gapqp/physcore/errors.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gapqp {

/// Normal equations are singular (a parameter does not affect the model).
class RankDeficiencyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

struct FitParameter {
    std::string name;
    std::string unit;
    double value = 0.0;
    double uncertainty = 0.0;  // standard, inf when the Jacobian is rank deficient
};

struct FitResult {
    std::vector<FitParameter> parameters;
    Eigen::MatrixXd covariance;
    double residual_sum = 0.0;  // chi^2 (weighted) or plain sum of squares
    std::size_t dof = 0;
    std::size_t iterations = 0;
    double final_step_norm = 0.0;
    bool full_rank = true;
    bool weighted = false;

    [[nodiscard]] const FitParameter& operator[](const std::string& name) const;
    [[nodiscard]] std::vector<double> values() const;
};

/// Iteration cap reached; carries the best parameters seen.
class FitError : public ConvergenceError {
public:
    FitError(const std::string& what, FitResult best)
        : ConvergenceError(what), best_(std::move(best)) {}
    [[nodiscard]] const FitResult& best_so_far() const { return best_; }

private:
    FitResult best_;
};

struct Observation {
    double x = 0.0;
    double y = 0.0;
    std::optional<double> sigma;
};

struct ParameterSpec {
    std::string name;
    std::string unit;
    double guess = 0.0;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
};

struct LeastSquaresOptions {
    std::size_t max_iterations = 500;
    double step_tol = 1e-10;      // relative step
    double residual_tol = 1e-12;  // relative change of the residual sum
    double jacobian_step = 1e-6;  // relative forward-difference step
    double initial_lambda = 1e-3;
};

using Model = std::function<double(double x, std::span<const double> p)>;

/// Box-bounded Levenberg-Marquardt with a forward-difference Jacobian.
/// Sigmas, when every observation has one, are absolute weights; otherwise the
/// covariance is rescaled by the reduced chi^2. Observations are put in a
/// canonical order first, so permuting them leaves the result bit-identical.
FitResult least_squares(const Model& model, std::span<const Observation> data,
                        std::span<const ParameterSpec> parameters,
                        const LeastSquaresOptions& options = {});

}  // namespace gapqp
