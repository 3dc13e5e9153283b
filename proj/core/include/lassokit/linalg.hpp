#pragma once

#include <Eigen/Dense>
#include <vector>

namespace lassokit {

// Dense row-major storage; problems live at desk scale (n <= 1e4, p <= 1e3),
// so no sparse formats.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Largest eigenvalue of a symmetric PSD matrix by power iteration with the
/// deterministic all-ones start vector. The start vector must not be
/// orthogonal to the dominant eigenspace; Gram matrices of generic data are
/// fine. Throws DimensionError on non-square/asymmetric input and
/// ConvergenceError past the iteration cap.
double sigma_max(const Matrix& a, double tol = 1e-10, int max_iters = 10000);

/// Cholesky factor (lower) of a symmetric positive definite matrix. No
/// regularization: rank deficiency throws SingularityError with `context`
/// in the message so callers can name the offending support.
Matrix cholesky_factor(const Matrix& a, const std::string& context = "");

/// Solve L L' x = b given the lower factor L.
Vector cholesky_solve(const Matrix& lower, const Vector& b);

/// Least squares restricted to a support set: returns beta with
/// beta[j] = 0 for j outside `support` and the normal-equations solution on
/// it. Indices are 0-based and must be unique and within [0, p).
Vector restricted_least_squares(const Matrix& x, const Vector& y,
                                const std::vector<int>& support);

}  // namespace lassokit
