#pragma once

#include <array>
#include <string>
#include <vector>

#include "lassokit/problem.hpp"
#include "lassokit/solvers.hpp"
#include "lassokit/trace.hpp"

namespace lassokit {

enum class TheoremId { kT1Ista, kT2Fista, kT3Cgda, kT4Sla, kL1Gd, kL2Agd };

std::string theorem_name(TheoremId id);

/// The theorem whose rate bound governs a solver's trace.
TheoremId theorem_for_algorithm(const std::string& algorithm);

/// Absolute numerical allowance when comparing the empirical gap against a
/// bound's right-hand side (absorbs oracle error at tol 1e-10).
inline constexpr double kBoundSlackAllowance = -1e-9;

struct BoundRow {
  int k = 0;
  double gap = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - gap
};

struct BoundReport {
  TheoremId theorem;
  std::vector<BoundRow> rows;
  bool holds = true;
  int violated_at = -1;  // first k whose slack fell below the allowance
  double min_slack = 0.0;
};

/// High-precision reference solution: FISTA to KKT residual tol/10, then a
/// polish solving the sign-restricted normal equations on the detected
/// support. Verifies support stability over 100 extra prox-gradient
/// iterations and that the returned point has kkt_residual <= tol; throws
/// ConvergenceError otherwise.
Vector oracle_solve(const LassoProblem& problem, double tol = 1e-10);

/// Evaluate a theorem's right-hand side at every recorded k >= 1 of the
/// trace and report the slack. The trace's algorithm must match the
/// theorem. R = ||beta^(0) - beta_hat|| comes from the trace's k = 0 record.
BoundReport check_bound(const IterateTrace& trace, const LassoProblem& problem,
                        const Vector& beta_hat, TheoremId theorem,
                        double allowance = kBoundSlackAllowance);

/// Lemma-rate check for generic run_gd / run_agd traces on functions with a
/// known optimum: gap_k <= r0_sq/(2 gamma k) (L1) or
/// 2 r0_sq/(gamma (k+1)^2) (L2).
BoundReport check_lemma_bound(const IterateTrace& trace, double optimal_value,
                              double start_dist_sq, double gamma, TheoremId lemma,
                              double allowance = kBoundSlackAllowance);

struct GapTarget {
  double target = 0.0;
  int iterations = -1;  // first recorded k reaching it; -1 if never
};

struct SolverBenchRow {
  std::string algo;
  std::array<GapTarget, 3> targets{};  // gaps 1e-2, 1e-4, 1e-6
  double wall_seconds = 0.0;
  double final_kkt = 0.0;
  IterateTrace trace;
  BoundReport bounds;
};

struct BenchResult {
  double oracle_objective = 0.0;
  Vector beta_hat;
  std::vector<SolverBenchRow> rows;
};

/// Run the named solvers (ista|fista|cgda|sla) from beta = 0 against one
/// shared oracle; solvers execute concurrently. Reports iterations to reach
/// each gap target, wall time, final KKT residual, and the matching
/// theorem's bound report.
BenchResult bench_run(const LassoProblem& problem,
                      const std::vector<std::string>& algos,
                      const SolverConfig& cfg,
                      const SurrogateParams& sla_params = {});

}  // namespace lassokit
