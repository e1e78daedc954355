#include "gapqp/transmon/tridiagonal.hpp"

#include "gapqp/physcore/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace gapqp {

Eigen::MatrixXd SymTridiagonal::dense() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = diagonal[std::size_t(i)];
        if (i + 1 < n) {
            m(i, i + 1) = m(i + 1, i) = off_diagonal[std::size_t(i)];
        }
    }
    return m;
}

namespace {

double pivot_floor(const SymTridiagonal& m) {
    double max_e2 = 1.0;
    for (double e : m.off_diagonal) {
        max_e2 = std::max(max_e2, e * e);
    }
    return std::numeric_limits<double>::min() * max_e2;
}

std::size_t sturm_count_impl(const SymTridiagonal& m, double x, double pivmin) {
    std::size_t count = 0;
    double q = m.diagonal[0] - x;
    if (std::abs(q) < pivmin) {
        q = -pivmin;
    }
    if (q < 0.0) {
        ++count;
    }
    for (std::size_t i = 1; i < m.size(); ++i) {
        const double e = m.off_diagonal[i - 1];
        q = (m.diagonal[i] - x) - e * e / q;
        if (std::abs(q) < pivmin) {
            q = -pivmin;
        }
        if (q < 0.0) {
            ++count;
        }
    }
    return count;
}

void check_shape(const SymTridiagonal& m) {
    if (m.size() == 0 || m.off_diagonal.size() + 1 != m.size()) {
        throw DomainError("tridiagonal matrix has inconsistent diagonal/off-diagonal sizes");
    }
}

}  // namespace

std::size_t sturm_count(const SymTridiagonal& m, double x) {
    check_shape(m);
    return sturm_count_impl(m, x, pivot_floor(m));
}

std::vector<double> lowest_eigenvalues(const SymTridiagonal& m, std::size_t k) {
    check_shape(m);
    const std::size_t n = m.size();
    if (k > n) {
        throw DomainError("lowest_eigenvalues: requested " + std::to_string(k) +
                          " eigenvalues of a " + std::to_string(n) + "x" + std::to_string(n) +
                          " matrix");
    }
    // Gershgorin interval.
    double lower = std::numeric_limits<double>::infinity();
    double upper = -lower;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) {
            radius += std::abs(m.off_diagonal[i - 1]);
        }
        if (i + 1 < n) {
            radius += std::abs(m.off_diagonal[i]);
        }
        lower = std::min(lower, m.diagonal[i] - radius);
        upper = std::max(upper, m.diagonal[i] + radius);
    }
    const double pad = 2.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(lower), std::abs(upper)) +
                       std::numeric_limits<double>::min();
    lower -= pad;
    upper += pad;

    const double pivmin = pivot_floor(m);
    std::vector<double> values(k);
    double lo_start = lower;
    for (std::size_t idx = 0; idx < k; ++idx) {
        // Invariant: count(lo) <= idx < count(hi).
        double lo = lo_start;
        double hi = upper;
        for (int iter = 0; iter < 2000; ++iter) {
            const double mid = lo + 0.5 * (hi - lo);
            if (mid <= lo || mid >= hi) {
                break;
            }
            if (sturm_count_impl(m, mid, pivmin) > idx) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        values[idx] = lo + 0.5 * (hi - lo);
        lo_start = lo;
    }
    return values;
}

EigenSystem eigensystem_ql(const SymTridiagonal& m) {
    check_shape(m);
    const auto n = static_cast<Eigen::Index>(m.size());
    Eigen::VectorXd d(n);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        d(i) = m.diagonal[std::size_t(i)];
        if (i + 1 < n) {
            e(i) = m.off_diagonal[std::size_t(i)];
        }
    }
    Eigen::MatrixXd z = Eigen::MatrixXd::Identity(n, n);
    constexpr int max_sweeps = 60;

    for (Eigen::Index l = 0; l < n; ++l) {
        int iter = 0;
        Eigen::Index mm = l;
        while (true) {
            for (mm = l; mm < n - 1; ++mm) {
                const double dd = std::abs(d(mm)) + std::abs(d(mm + 1));
                if (std::abs(e(mm)) <= std::numeric_limits<double>::epsilon() * dd) {
                    break;
                }
            }
            if (mm == l) {
                break;
            }
            if (++iter > max_sweeps) {
                throw NumericalError("eigensystem_ql: eigenvalue " + std::to_string(l) +
                                     " did not deflate after " + std::to_string(max_sweeps) +
                                     " sweeps (n = " + std::to_string(n) +
                                     ", |e| = " + std::to_string(std::abs(e(l))) + ")");
            }
            double g = (d(l + 1) - d(l)) / (2.0 * e(l));
            double r = std::hypot(g, 1.0);
            g = d(mm) - d(l) + e(l) / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            Eigen::Index i = mm - 1;
            bool underflow = false;
            for (; i >= l; --i) {
                double f = s * e(i);
                const double b = c * e(i);
                r = std::hypot(f, g);
                e(i + 1) = r;
                if (r == 0.0) {
                    d(i + 1) -= p;
                    e(mm) = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d(i + 1) - p;
                r = (d(i) - g) * s + 2.0 * c * b;
                p = s * r;
                d(i + 1) = g + p;
                g = c * r - b;
                for (Eigen::Index k = 0; k < n; ++k) {
                    f = z(k, i + 1);
                    z(k, i + 1) = s * z(k, i) + c * f;
                    z(k, i) = c * z(k, i) - s * f;
                }
            }
            if (underflow && i >= l) {
                continue;
            }
            d(l) -= p;
            e(l) = g;
            e(mm) = 0.0;
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return d(a) < d(b); });
    EigenSystem out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        out.values(j) = d(order[std::size_t(j)]);
        out.vectors.col(j) = z.col(order[std::size_t(j)]);
    }
    return out;
}

}  // namespace gapqp
