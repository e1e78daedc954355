#include "gapqp/physcore/optimize.hpp"

#include "gapqp/physcore/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gapqp {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options) {
    const std::size_t n = start.size();
    if (n == 0) {
        throw DomainError("nelder_mead: empty parameter vector");
    }
    std::vector<std::vector<double>> simplex(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) {
        const double step = start[i] != 0.0 ? options.initial_step * std::abs(start[i])
                                            : options.initial_step;
        simplex[i + 1][i] += step;
    }
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        values[i] = objective(simplex[i]);
    }

    std::vector<std::size_t> order(n + 1);
    NelderMeadResult result;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[n - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            double d2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double d = simplex[i][j] - simplex[best][j];
                d2 += d * d;
            }
            diameter = std::max(diameter, std::sqrt(d2));
        }
        if (values[worst] - values[best] <= options.f_tol && diameter <= options.x_tol) {
            result.converged = true;
            break;
        }
        if (diameter <= std::numeric_limits<double>::epsilon() * 4.0) {
            // Simplex collapsed to rounding level; nothing further to gain.
            result.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                centroid[j] += simplex[i][j] / double(n);
            }
        }
        auto along = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t j = 0; j < n; ++j) {
                x[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
            }
            return x;
        };

        const auto reflected = along(-1.0);
        const double f_reflected = objective(reflected);
        if (f_reflected < values[best]) {
            const auto expanded = along(-2.0);
            const double f_expanded = objective(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < values[second_worst]) {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
            continue;
        }
        const bool outside = f_reflected < values[worst];
        const auto contracted = along(outside ? -0.5 : 0.5);
        const double f_contracted = objective(contracted);
        if (f_contracted < (outside ? f_reflected : values[worst])) {
            simplex[worst] = contracted;
            values[worst] = f_contracted;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
            }
            values[i] = objective(simplex[i]);
        }
    }
    const auto best_it = std::min_element(values.begin(), values.end());
    const auto best = std::size_t(best_it - values.begin());
    result.x = simplex[best];
    result.value = values[best];
    result.iterations = iter;
    return result;
}

}  // namespace gapqp
