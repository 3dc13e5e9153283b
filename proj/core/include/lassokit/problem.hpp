#pragma once

#include <atomic>
#include <cstdint>

#include "lassokit/linalg.hpp"

namespace lassokit {

/// Soft-thresholding S(x, a): x-a if x >= a, x+a if x <= -a, else 0.
/// The exact prox of a * |.|. Throws on negative a.
double soft_threshold(double x, double a);
Vector soft_threshold(const Vector& x, double a);

/// Sharpness of the smooth |x| surrogate; larger alpha hugs |x| tighter.
struct SurrogateParams {
  double alpha = 200.0;
};

/// phi_alpha(x) = (1/alpha) [log(1+exp(-alpha x)) + log(1+exp(alpha x))],
/// evaluated through the overflow-free identity
/// phi_alpha(x) = |x| + (2/alpha) log1p(exp(-alpha |x|)).
double surrogate_phi(double x, const SurrogateParams& params);

/// The l1-penalized least squares problem
///   F(beta) = (1/2n) ||y - X beta||^2 + lambda ||beta||_1
/// with X'X, X'y, y'y and L = sigma_max(X'X/n) cached at construction.
/// All iterative work downstream runs off the caches; X itself is only
/// needed to build them (see x_access_count, used by tests to pin the
/// O(p^2)-per-iteration contract). Immutable after construction and safe
/// to share across threads.
class LassoProblem {
 public:
  LassoProblem(Matrix x, Vector y, double lambda);

  Eigen::Index n() const { return n_; }
  Eigen::Index p() const { return gram_.rows(); }
  double lambda() const { return lambda_; }

  const Matrix& x() const {
    x_accesses_.fetch_add(1, std::memory_order_relaxed);
    return x_;
  }
  const Vector& y() const { return y_; }
  const Matrix& gram() const { return gram_; }
  const Vector& xty() const { return xty_; }
  double yty() const { return yty_; }

  /// L = sigma_max(X'X/n), the Lipschitz constant of the smooth part.
  double lipschitz() const { return lipschitz_; }

  /// F(beta), computed from the cached quadratic form in O(p^2).
  double objective(const Vector& beta) const;

  /// The smooth half (1/2n)||y - X beta||^2 alone.
  double smooth_value(const Vector& beta) const;

  /// (X'X beta - X'y) / n.
  Vector grad_smooth(const Vector& beta) const;

  /// Max distance of (X'y - X'X beta)/n from the l1 subdifferential:
  /// |g_j - lambda sign(beta_j)| on the support, max(0, |g_j| - lambda)
  /// off it. Zero exactly at the minimizer.
  double kkt_residual(const Vector& beta) const;

  /// F_alpha(beta) = smooth part + lambda * sum_i phi_alpha(beta_i).
  double surrogate_objective(const Vector& beta, const SurrogateParams& params) const;

  /// grad F_alpha = grad_smooth + lambda * tanh(alpha beta / 2) elementwise.
  Vector surrogate_grad(const Vector& beta, const SurrogateParams& params) const;

  /// Number of times x() has been handed out. Construction does not count.
  std::int64_t x_access_count() const {
    return x_accesses_.load(std::memory_order_relaxed);
  }

 private:
  void check_beta(const Vector& beta, const char* op) const;

  Matrix x_;
  Vector y_;
  double lambda_;
  Eigen::Index n_;
  Matrix gram_;
  Vector xty_;
  double yty_;
  double lipschitz_;
  mutable std::atomic<std::int64_t> x_accesses_{0};
};

}  // namespace lassokit
