#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lassokit/problem.hpp"

namespace lassokit {

/// Smallest lambda at which the Lasso solution is identically zero:
/// ||X'y||_inf / n.
double lambda_max(const LassoProblem& problem);

struct SupportSet {
  std::vector<int> indices;  // 0-based, sorted
  std::vector<int> signs;    // aligned, each +1 or -1
};

/// One piecewise-linear piece of the regularization path: on
/// (lambda_lo, lambda_hi) the active coefficients follow
/// beta_S(lambda) = intercept + lambda * slope (aligned with support).
struct PathSegment {
  double lambda_hi = 0.0;
  double lambda_lo = 0.0;
  SupportSet support;
  Vector intercept;
  Vector slope;
};

enum class PathMode {
  /// Standard homotopy: support changes at both insertion kinks (an inactive
  /// coordinate's correlation reaching lambda) and deletion kinks (an active
  /// coefficient crossing zero).
  kFull,
  /// Support only ever grows. The next coordinate is the one most correlated
  /// with the current restricted least-squares residual, entering at the
  /// lambda where its correlation crossing sits; when no such crossing
  /// exists the sign equations are infeasible and the path stops with
  /// kFailedInsertion.
  kInsertionOnly,
};

enum class PathStatus { kCompleted, kFailedInsertion };

struct PathDiagnostic {
  int loop = 0;                // 1-based loop index at which insertion failed
  SupportSet support;          // support held when insertion failed
  std::vector<int> inactive;   // inactive coordinates, aligned with rhs/residual
  Vector rhs;                  // X_{S^c}' X_S (X_S'X_S)^{-1} s_S
  Vector residual;             // partial correlations of the inactive coords
  std::string message;
};

struct RegPath {
  Eigen::Index p = 0;
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  std::vector<PathSegment> segments;
  std::vector<double> kinks;  // strictly decreasing, kinks.front() = lambda_max
  PathStatus status = PathStatus::kCompleted;
  std::optional<PathDiagnostic> diagnostic;
  std::vector<std::string> notes;  // tie-break log
};

/// Trace the path from lambda_max down to target_lambda. The problem's own
/// lambda plays no role here. Throws SingularityError when a visited
/// support's Gram block is rank deficient and ConvergenceError past the
/// segment cap 10 * p * max(1, n).
RegPath solve_path(const LassoProblem& problem, PathMode mode = PathMode::kFull,
                   double target_lambda = 0.0);

/// Exact piecewise-linear evaluation. lam must lie in
/// [covered lambda_min, lambda_max].
Vector eval_path_at(const RegPath& path, double lam);

struct CounterExample {
  Matrix x;
  Vector y;
  Vector beta_star;
  std::vector<int> true_support;  // {0, 1, 2}
};

/// The correlated design that defeats insertion-only path following:
/// X_1, X_2 orthonormal, X_j = a_j X_1 + (1-a_j) X_2 +
/// sqrt(1 - a_j^2 - (1-a_j)^2) Xt_j for j >= 3, y = b1 X_1 + b2 X_2 + b3 X_3
/// (noiseless). The orthonormal basis comes from QR of a seeded random
/// matrix. Requires p >= 4, n >= p, alphas in (0,1) of length p-2 and
/// b1 > b2 > b3 > 0.
CounterExample build_counter_example(Eigen::Index p, Eigen::Index n,
                                     const std::vector<double>& alphas,
                                     const std::array<double, 3>& betas = {200.0, 100.0, 1.0},
                                     std::uint64_t basis_seed = 42);

struct CounterExampleReport {
  std::uint64_t seed = 0;
  Eigen::Index p = 0;
  Eigen::Index n = 0;
  double lambda_max = 0.0;
  /// Supports after each completed loop plus the support held when
  /// insertion failed (so loop k's support sits at index k-1).
  std::vector<SupportSet> loop_supports;
  int fail_loop = -1;
  std::vector<int> rhs_indices;
  Vector rhs;  // all-ones at the failure loop
  PathStatus status = PathStatus::kCompleted;
  std::vector<int> oracle_support;  // 0-based, from oracle_solve at 1e-4 lambda_max
  RegPath path;
};

/// The alpha stream shared by reproduce_counter_example and the CLI's
/// counterexample preset: p-2 draws uniform(0.15, 0.85), kept away from the
/// endpoints so the off-plane column components stay well conditioned.
std::vector<double> seeded_alphas(std::uint64_t seed, Eigen::Index p);

/// Run the insertion-only mode on the constructed instance with n = 2p and
/// seeded_alphas(seed, p), then recover the true support by the
/// high-precision solver at lambda = 1e-4 * lambda_max. Deterministic for a
/// fixed seed.
CounterExampleReport reproduce_counter_example(std::uint64_t seed, Eigen::Index p);

struct LarsStep {
  int entering = -1;          // 0-based index that joined the active set
  double max_correlation = 0; // |X'r| at the moment of entry
  Vector beta;                // coefficients after the step's move
};

struct LarsTrace {
  std::vector<LarsStep> steps;
  Vector beta;
};

/// Least angle regression, Steps 1-5 form (no lasso drop step): repeatedly
/// admit the predictor most correlated with the residual and move the
/// active coefficients along their joint least squares direction until the
/// next predictor catches up. Columns must have unit norm; exact ties in
/// entering correlations raise TieError, rank deficiency SingularityError.
LarsTrace solve_lars(const Matrix& x, const Vector& y);

}  // namespace lassokit
