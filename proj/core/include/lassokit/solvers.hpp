#pragma once

#include "lassokit/descent.hpp"
#include "lassokit/problem.hpp"
#include "lassokit/trace.hpp"

namespace lassokit {

enum class CgdaUpdate { kGaussSeidel, kJacobi };

struct SolverConfig {
  int max_iters = 1000;
  /// Stop once the KKT residual drops to this value; 0 disables the early
  /// stop and runs exactly max_iters (the fixed-K mode used for bound
  /// reproduction).
  double gap_tol = 0.0;
  int record_every = 1;
  /// Multiplies the nominal 1/L step of ISTA/FISTA. Values > 1 break the
  /// convergence guarantees on purpose (bound-checker sensitivity runs).
  double step_scale = 1.0;
  CgdaUpdate cgda_update = CgdaUpdate::kGaussSeidel;
};

/// Iterative shrinkage-thresholding: beta <- S(beta - (1/nL)(X'X beta - X'y),
/// lambda/L). All solvers are deterministic and start from x0.
IterateTrace solve_ista(const LassoProblem& problem, const Vector& x0,
                        const SolverConfig& cfg);

/// FISTA: same prox step applied at the t_k-extrapolated point.
IterateTrace solve_fista(const LassoProblem& problem, const Vector& x0,
                         const SolverConfig& cfg);

/// Cyclic coordinate gradient descent; one trace record per full sweep.
/// Gauss-Seidel updates by default (each coordinate sees the freshest
/// values, an exact 1-D minimization); kJacobi freezes the sweep's input
/// vector for a literal reading of the update rule.
IterateTrace solve_cgda(const LassoProblem& problem, const Vector& x0,
                        const SolverConfig& cfg);

/// Smoothed-l1 solver: accelerated gradient descent on F_alpha with fixed
/// step mu = 1/(L + lambda*alpha/2) and (k-2)/(k+1) momentum. The trace's
/// objective column carries F; surrogate_objective carries F_alpha.
IterateTrace solve_sla(const LassoProblem& problem, const SurrogateParams& params,
                       const Vector& x0, const SolverConfig& cfg);

}  // namespace lassokit
