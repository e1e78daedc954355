#include "gapqp/fitting/least_squares.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace gapqp {

const FitParameter& FitResult::operator[](const std::string& name) const {
    for (const auto& p : parameters) {
        if (p.name == name) {
            return p;
        }
    }
    throw DomainError("no fit parameter named '" + name + "'");
}

std::vector<double> FitResult::values() const {
    std::vector<double> v;
    v.reserve(parameters.size());
    for (const auto& p : parameters) {
        v.push_back(p.value);
    }
    return v;
}

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

struct Problem {
    const Model& model;
    std::vector<Observation> data;
    std::vector<double> weights;

    Eigen::VectorXd residuals(const Eigen::VectorXd& p) const {
        Eigen::VectorXd r(Eigen::Index(data.size()));
        const std::span<const double> ps(p.data(), std::size_t(p.size()));
        for (std::size_t i = 0; i < data.size(); ++i) {
            const double f = model(data[i].x, ps);
            if (!std::isfinite(f)) {
                throw NumericalError("model is not finite at x = " + std::to_string(data[i].x));
            }
            r[Eigen::Index(i)] = (data[i].y - f) / weights[i];
        }
        return r;
    }

    /// Jacobian of the weighted model, i.e. -d r / d p.
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& p, const Eigen::VectorXd& r,
                             std::span<const ParameterSpec> specs, double rel_step) const {
        Eigen::MatrixXd J(r.size(), p.size());
        for (Eigen::Index j = 0; j < p.size(); ++j) {
            double h = rel_step * (p[j] != 0.0 ? std::abs(p[j]) : 1.0);
            if (p[j] + h > specs[std::size_t(j)].upper) {
                h = -h;
            }
            Eigen::VectorXd shifted = p;
            shifted[j] += h;
            J.col(j) = (r - residuals(shifted)) / h;
        }
        return J;
    }
};

Eigen::VectorXd clamp_to(const Eigen::VectorXd& p, std::span<const ParameterSpec> specs) {
    Eigen::VectorXd out = p;
    for (Eigen::Index j = 0; j < p.size(); ++j) {
        out[j] = std::clamp(p[j], specs[std::size_t(j)].lower, specs[std::size_t(j)].upper);
    }
    return out;
}

bool small_step(const Eigen::VectorXd& step, const Eigen::VectorXd& p, double tol) {
    for (Eigen::Index j = 0; j < p.size(); ++j) {
        if (std::abs(step[j]) > tol * (std::abs(p[j]) + tol)) {
            return false;
        }
    }
    return true;
}

FitResult summarize(const Problem& problem, const Eigen::VectorXd& p, double cost,
                    std::span<const ParameterSpec> specs, const LeastSquaresOptions& options,
                    bool weighted) {
    const auto n = p.size();
    const auto m = Eigen::Index(problem.data.size());
    FitResult result;
    result.residual_sum = cost;
    result.dof = std::size_t(m - n);
    result.weighted = weighted;

    const Eigen::VectorXd r = problem.residuals(p);
    const Eigen::MatrixXd J = problem.jacobian(p, r, specs, options.jacobian_step);
    Eigen::VectorXd scale(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        scale[j] = J.col(j).norm();
    }
    result.full_rank = (scale.array() > 0.0).all();
    Eigen::MatrixXd cov = Eigen::MatrixXd::Constant(n, n, inf);
    if (result.full_rank) {
        const Eigen::MatrixXd Js = J * scale.cwiseInverse().asDiagonal();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(Js, Eigen::ComputeThinV);
        const auto& s = svd.singularValues();
        const double cutoff = s[0] * double(std::max(m, n)) * std::numeric_limits<double>::epsilon();
        result.full_rank = s[n - 1] > cutoff;
        if (result.full_rank) {
            const Eigen::MatrixXd V = svd.matrixV();
            const Eigen::MatrixXd inner =
                V * s.array().square().inverse().matrix().asDiagonal() * V.transpose();
            double s2 = 1.0;
            if (!weighted) {
                s2 = result.dof > 0 ? cost / double(result.dof) : inf;
            }
            cov = scale.cwiseInverse().asDiagonal() * inner * scale.cwiseInverse().asDiagonal();
            cov *= s2;
        }
    }
    result.covariance = cov;
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto& spec = specs[std::size_t(j)];
        result.parameters.push_back(
            {spec.name, spec.unit, p[j], result.full_rank ? std::sqrt(cov(j, j)) : inf});
    }
    return result;
}

}  // namespace

FitResult least_squares(const Model& model, std::span<const Observation> data,
                        std::span<const ParameterSpec> parameters,
                        const LeastSquaresOptions& options) {
    const auto n = Eigen::Index(parameters.size());
    if (n == 0) {
        throw PreconditionError("least squares needs at least one parameter");
    }
    if (data.size() < parameters.size()) {
        throw PreconditionError("least squares needs at least as many points as parameters");
    }
    Eigen::VectorXd p(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto& spec = parameters[std::size_t(j)];
        if (!(spec.lower <= spec.guess && spec.guess <= spec.upper) || !std::isfinite(spec.guess)) {
            throw PreconditionError("initial guess for '" + spec.name + "' lies outside its bounds");
        }
        p[j] = spec.guess;
    }
    const auto with_sigma = std::count_if(data.begin(), data.end(),
                                          [](const Observation& o) { return o.sigma.has_value(); });
    if (with_sigma != 0 && std::size_t(with_sigma) != data.size()) {
        throw PreconditionError("either every observation carries a sigma or none does");
    }
    const bool weighted = with_sigma != 0;

    Problem problem{model, {data.begin(), data.end()}, {}};
    std::sort(problem.data.begin(), problem.data.end(), [](const Observation& a, const Observation& b) {
        return std::make_tuple(a.x, a.y, a.sigma.value_or(0.0)) <
               std::make_tuple(b.x, b.y, b.sigma.value_or(0.0));
    });
    for (const auto& o : problem.data) {
        if (weighted && !(*o.sigma > 0.0)) {
            throw PreconditionError("observation sigmas must be positive");
        }
        problem.weights.push_back(weighted ? *o.sigma : 1.0);
    }

    Eigen::VectorXd r = problem.residuals(p);
    double cost = r.squaredNorm();
    {
        const Eigen::MatrixXd J = problem.jacobian(p, r, parameters, options.jacobian_step);
        for (Eigen::Index j = 0; j < n; ++j) {
            if (J.col(j).isZero(0.0)) {
                throw RankDeficiencyError("model does not depend on parameter '" +
                                          parameters[std::size_t(j)].name + "'");
            }
        }
    }

    double lambda = options.initial_lambda;
    double last_step = 0.0;
    bool converged = cost == 0.0;
    std::size_t iteration = 0;
    while (!converged && iteration < options.max_iterations) {
        ++iteration;
        const Eigen::MatrixXd J = problem.jacobian(p, r, parameters, options.jacobian_step);
        Eigen::MatrixXd A = J.transpose() * J;
        Eigen::VectorXd g = J.transpose() * r;
        // Parameters pinned at a bound with the downhill direction pointing
        // outward are held fixed for this iteration.
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& spec = parameters[std::size_t(j)];
            if ((p[j] <= spec.lower && g[j] < 0.0) || (p[j] >= spec.upper && g[j] > 0.0)) {
                A.row(j).setZero();
                A.col(j).setZero();
                A(j, j) = 1.0;
                g[j] = 0.0;
            }
        }
        for (;;) {
            Eigen::MatrixXd M = A;
            for (Eigen::Index j = 0; j < n; ++j) {
                M(j, j) += lambda * std::max(A(j, j), std::numeric_limits<double>::min());
            }
            const Eigen::VectorXd delta = M.ldlt().solve(g);
            const Eigen::VectorXd trial = clamp_to(p + delta, parameters);
            const Eigen::VectorXd step = trial - p;
            last_step = step.norm();
            const bool tiny = small_step(step, p, options.step_tol);
            double trial_cost = inf;
            Eigen::VectorXd trial_r;
            if (delta.allFinite()) {
                trial_r = problem.residuals(trial);
                trial_cost = trial_r.squaredNorm();
            }
            if (trial_cost < cost) {
                const double change = (cost - trial_cost) / cost;
                p = trial;
                r = std::move(trial_r);
                cost = trial_cost;
                lambda = std::max(lambda / 10.0, 1e-15);
                converged = tiny || change < options.residual_tol || cost == 0.0;
                break;
            }
            lambda *= 10.0;
            if (tiny || lambda > 1e20) {
                // No downhill move left at the resolution of the step test.
                converged = true;
                break;
            }
        }
    }

    FitResult result = summarize(problem, p, cost, parameters, options, weighted);
    result.iterations = iteration;
    result.final_step_norm = last_step;
    if (!converged) {
        throw FitError("least squares did not converge in " + std::to_string(iteration) +
                           " iterations (residual sum " + std::to_string(cost) + ")",
                       std::move(result));
    }
    return result;
}

}  // namespace gapqp
