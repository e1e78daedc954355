#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace gapqp {

/// Real symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal (off_diagonal.size() == diagonal.size() - 1).
struct SymTridiagonal {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;

    [[nodiscard]] std::size_t size() const { return diagonal.size(); }
    [[nodiscard]] Eigen::MatrixXd dense() const;
};

/// Number of eigenvalues strictly below x (Sturm sequence count).
std::size_t sturm_count(const SymTridiagonal& m, double x);

/// Lowest k eigenvalues in ascending order by Sturm bisection.
///
/// The LDL^T recurrence behind the count is componentwise backward stable,
/// so low-lying eigenvalues are resolved to a few ulps of the energies that
/// actually carry their weight rather than to eps * ||T||. Charge dispersions
/// many orders below the matrix norm depend on this.
std::vector<double> lowest_eigenvalues(const SymTridiagonal& m, std::size_t k);

struct EigenSystem {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // column j is the eigenvector of values[j]
};

/// Full eigen-decomposition by implicit-shift QL. Throws NumericalError if an
/// eigenvalue fails to deflate within the iteration budget.
EigenSystem eigensystem_ql(const SymTridiagonal& m);

}  // namespace gapqp
