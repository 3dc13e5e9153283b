#include "lassokit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lassokit/errors.hpp"

namespace lassokit {

double sigma_max(const Matrix& a, double tol, int max_iters) {
  const auto n = a.rows();
  if (n != a.cols()) {
    throw DimensionError("sigma_max: matrix is not square");
  }
  if (n == 0) {
    throw DimensionError("sigma_max: empty matrix");
  }
  const double scale = a.cwiseAbs().maxCoeff();
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, scale)) {
    throw DimensionError("sigma_max: matrix is not symmetric");
  }
  if (scale == 0.0) {
    return 0.0;
  }

  Vector v = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  double lambda = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    Vector av = a * v;
    const double norm = av.norm();
    if (norm == 0.0) {
      return 0.0;  // v lies in the null space; for PSD input 0 is an eigenvalue
    }
    const double rayleigh = v.dot(av) / v.squaredNorm();
    const double change = std::abs(rayleigh - lambda);
    lambda = rayleigh;
    v = av / norm;
    if (it > 0 && change <= tol * std::max(1.0, std::abs(lambda))) {
      const double resid = (a * v - lambda * v).cwiseAbs().maxCoeff();
      if (resid <= std::sqrt(tol) * std::max(1.0, std::abs(lambda))) {
        return lambda;
      }
    }
  }
  throw ConvergenceError("sigma_max: power iteration did not converge within cap");
}

Matrix cholesky_factor(const Matrix& a, const std::string& context) {
  const auto n = a.rows();
  if (n != a.cols()) {
    throw DimensionError("cholesky_factor: matrix is not square");
  }
  Matrix lower = Matrix::Zero(n, n);
  const double scale = n > 0 ? std::max(a.diagonal().maxCoeff(), 0.0) : 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = a(j, j);
    for (Eigen::Index k = 0; k < j; ++k) d -= lower(j, k) * lower(j, k);
    if (!(d > 1e-12 * std::max(1.0, scale))) {
      std::ostringstream msg;
      msg << "rank-deficient system";
      if (!context.empty()) msg << " for " << context;
      msg << " (pivot " << j << " = " << d << ")";
      throw SingularityError(msg.str());
    }
    lower(j, j) = std::sqrt(d);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= lower(i, k) * lower(j, k);
      lower(i, j) = s / lower(j, j);
    }
  }
  return lower;
}

Vector cholesky_solve(const Matrix& lower, const Vector& b) {
  const auto n = lower.rows();
  if (b.size() != n) {
    throw DimensionError("cholesky_solve: rhs length mismatch");
  }
  Vector z(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = b(i);
    for (Eigen::Index k = 0; k < i; ++k) s -= lower(i, k) * z(k);
    z(i) = s / lower(i, i);
  }
  Vector x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    double s = z(i);
    for (Eigen::Index k = i + 1; k < n; ++k) s -= lower(k, i) * x(k);
    x(i) = s / lower(i, i);
  }
  return x;
}

namespace {

std::string support_to_string(const std::vector<int>& support) {
  std::ostringstream os;
  os << "support {";
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (i > 0) os << ",";
    os << support[i] + 1;  // 1-based in messages, matching CLI output
  }
  os << "}";
  return os.str();
}

}  // namespace

Vector restricted_least_squares(const Matrix& x, const Vector& y,
                                const std::vector<int>& support) {
  if (x.rows() != y.size()) {
    throw DimensionError("restricted_least_squares: X rows != y length");
  }
  const auto p = x.cols();
  Vector beta = Vector::Zero(p);
  if (support.empty()) return beta;

  const auto k = static_cast<Eigen::Index>(support.size());
  for (int j : support) {
    if (j < 0 || j >= p) {
      throw DimensionError("restricted_least_squares: support index out of range");
    }
  }
  Matrix xs(x.rows(), k);
  for (Eigen::Index i = 0; i < k; ++i) xs.col(i) = x.col(support[i]);

  Matrix gram = xs.transpose() * xs;
  Vector rhs = xs.transpose() * y;
  Matrix lower = cholesky_factor(gram, support_to_string(support));
  Vector sol = cholesky_solve(lower, rhs);
  for (Eigen::Index i = 0; i < k; ++i) beta(support[i]) = sol(i);
  return beta;
}

}  // namespace lassokit
