#include "lassokit/problem.hpp"

#include <cmath>

#include "lassokit/errors.hpp"

namespace lassokit {

double soft_threshold(double x, double a) {
  if (a < 0) {
    throw DimensionError("soft_threshold: negative threshold");
  }
  if (x >= a) return x - a;
  if (x <= -a) return x + a;
  return 0.0;
}

Vector soft_threshold(const Vector& x, double a) {
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = soft_threshold(x(i), a);
  return out;
}

double surrogate_phi(double x, const SurrogateParams& params) {
  if (!(params.alpha > 0)) {
    throw DimensionError("surrogate_phi: alpha must be positive");
  }
  const double ax = std::abs(x);
  return ax + (2.0 / params.alpha) * std::log1p(std::exp(-params.alpha * ax));
}

LassoProblem::LassoProblem(Matrix x, Vector y, double lambda)
    : x_(std::move(x)), y_(std::move(y)), lambda_(lambda), n_(x_.rows()) {
  if (n_ != y_.size()) {
    throw DimensionError("LassoProblem: X rows != y length");
  }
  if (n_ == 0 || x_.cols() == 0) {
    throw DimensionError("LassoProblem: empty design matrix");
  }
  if (!(lambda >= 0)) {
    throw DimensionError("LassoProblem: lambda must be nonnegative");
  }
  if (!x_.allFinite() || !y_.allFinite()) {
    throw DimensionError("LassoProblem: non-finite entries in data");
  }
  gram_ = x_.transpose() * x_;
  xty_ = x_.transpose() * y_;
  yty_ = y_.squaredNorm();
  const double dn = static_cast<double>(n_);
  lipschitz_ = sigma_max(Matrix(gram_ / dn));
}

void LassoProblem::check_beta(const Vector& beta, const char* op) const {
  if (beta.size() != p()) {
    throw DimensionError(std::string(op) + ": beta length != p");
  }
}

double LassoProblem::smooth_value(const Vector& beta) const {
  check_beta(beta, "smooth_value");
  const double dn = static_cast<double>(n_);
  const double quad = yty_ - 2.0 * xty_.dot(beta) + beta.dot(gram_ * beta);
  return 0.5 * quad / dn;
}

double LassoProblem::objective(const Vector& beta) const {
  // penalty accumulated in the same order as surrogate_objective's, so that
  // F_alpha(beta) - F(beta) >= 0 holds even in floating point
  double pen = 0.0;
  for (Eigen::Index i = 0; i < beta.size(); ++i) pen += std::abs(beta(i));
  return smooth_value(beta) + lambda_ * pen;
}

Vector LassoProblem::grad_smooth(const Vector& beta) const {
  check_beta(beta, "grad_smooth");
  return (gram_ * beta - xty_) / static_cast<double>(n_);
}

double LassoProblem::kkt_residual(const Vector& beta) const {
  check_beta(beta, "kkt_residual");
  const Vector g = (xty_ - gram_ * beta) / static_cast<double>(n_);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    double r;
    if (beta(j) > 0) {
      r = std::abs(g(j) - lambda_);
    } else if (beta(j) < 0) {
      r = std::abs(g(j) + lambda_);
    } else {
      r = std::max(0.0, std::abs(g(j)) - lambda_);
    }
    worst = std::max(worst, r);
  }
  return worst;
}

double LassoProblem::surrogate_objective(const Vector& beta,
                                         const SurrogateParams& params) const {
  double pen = 0.0;
  for (Eigen::Index i = 0; i < beta.size(); ++i) pen += surrogate_phi(beta(i), params);
  return smooth_value(beta) + lambda_ * pen;
}

Vector LassoProblem::surrogate_grad(const Vector& beta,
                                    const SurrogateParams& params) const {
  if (!(params.alpha > 0)) {
    throw DimensionError("surrogate_grad: alpha must be positive");
  }
  Vector g = grad_smooth(beta);
  for (Eigen::Index i = 0; i < beta.size(); ++i) {
    g(i) += lambda_ * std::tanh(0.5 * params.alpha * beta(i));
  }
  return g;
}

}  // namespace lassokit
