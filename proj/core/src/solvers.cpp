#include "lassokit/solvers.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "lassokit/errors.hpp"

namespace lassokit {

namespace {

void check_start(const LassoProblem& problem, const Vector& x0) {
  if (x0.size() != problem.p()) {
    throw DimensionError("solver: x0 length != p");
  }
}

// A zero design with lambda = 0 has no step size to iterate with; with
// lambda > 0 the zero vector is exactly optimal and is returned directly.
IterateTrace degenerate_design_trace(const LassoProblem& problem, const Vector& x0,
                                     const std::string& name) {
  if (problem.lambda() == 0.0) {
    throw DegenerateProblemError(name + ": L = 0 with lambda = 0");
  }
  IterateTrace trace;
  trace.algorithm = name;
  trace.records.push_back({0, x0, problem.objective(x0), problem.kkt_residual(x0), 0});
  const Vector zero = Vector::Zero(problem.p());
  trace.records.push_back({1, zero, problem.objective(zero), 0.0, 0});
  trace.iterations = 1;
  trace.converged = true;
  return trace;
}

IterateTrace prox_gradient_run(const LassoProblem& problem, const Vector& x0,
                               const SolverConfig& cfg, MomentumSchedule schedule,
                               const std::string& name) {
  check_start(problem, x0);
  if (problem.lipschitz() <= 0.0) {
    return degenerate_design_trace(problem, x0, name);
  }
  const double L = problem.lipschitz();
  const double lambda = problem.lambda();

  detail::EngineOptions opts;
  opts.rule = StepRule::fixed(cfg.step_scale / L);
  opts.schedule = schedule;
  opts.max_iters = cfg.max_iters;
  opts.gap_tol = cfg.gap_tol;
  opts.record_every = cfg.record_every;
  opts.algorithm = name;

  ScalarFn g = [&problem](const Vector& v) { return problem.smooth_value(v); };
  VectorFn grad = [&problem](const Vector& v) { return problem.grad_smooth(v); };
  ProxFn prox = [lambda](const Vector& v, double t) { return prox_l1(v, t, lambda); };
  ScalarFn value = [&problem](const Vector& v) { return problem.objective(v); };
  ScalarFn residual = [&problem](const Vector& v) { return problem.kkt_residual(v); };
  return detail::agd_engine(g, grad, prox, x0, opts, value, residual);
}

}  // namespace

IterateTrace solve_ista(const LassoProblem& problem, const Vector& x0,
                        const SolverConfig& cfg) {
  return prox_gradient_run(problem, x0, cfg, MomentumSchedule::kNone, "ista");
}

IterateTrace solve_fista(const LassoProblem& problem, const Vector& x0,
                         const SolverConfig& cfg) {
  return prox_gradient_run(problem, x0, cfg, MomentumSchedule::kFistaT, "fista");
}

IterateTrace solve_cgda(const LassoProblem& problem, const Vector& x0,
                        const SolverConfig& cfg) {
  check_start(problem, x0);
  const auto p = problem.p();
  const Matrix& gram = problem.gram();
  const Vector& xty = problem.xty();
  const double nlambda = static_cast<double>(problem.n()) * problem.lambda();
  for (Eigen::Index j = 0; j < p; ++j) {
    if (gram(j, j) <= 0.0) {
      std::ostringstream msg;
      msg << "solve_cgda: column " << j + 1 << " has zero norm";
      throw DegenerateProblemError(msg.str());
    }
  }
  if (cfg.max_iters < 1 || cfg.record_every < 1) {
    throw DimensionError("solve_cgda: bad config");
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&start] {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  };

  IterateTrace trace;
  trace.algorithm = "cgda";
  Vector beta = x0;
  trace.records.push_back(
      {0, beta, problem.objective(beta), problem.kkt_residual(beta), elapsed()});

  for (int k = 1; k <= cfg.max_iters; ++k) {
    const Vector frozen = cfg.cgda_update == CgdaUpdate::kJacobi ? beta : Vector();
    const Vector& read = cfg.cgda_update == CgdaUpdate::kJacobi ? frozen : beta;
    for (Eigen::Index j = 0; j < p; ++j) {
      // rho = (X'y)_j - sum_{l != j} (X'X)_{jl} beta_l
      const double rho = xty(j) - gram.row(j).dot(read) + gram(j, j) * read(j);
      beta(j) = soft_threshold(rho, nlambda) / gram(j, j);
    }
    const double f = problem.objective(beta);
    if (!std::isfinite(f)) {
      throw DivergenceError("solve_cgda: non-finite objective", k);
    }
    const bool due = (k % cfg.record_every == 0) || k == cfg.max_iters;
    const double res = problem.kkt_residual(beta);
    if (due) trace.records.push_back({k, beta, f, res, elapsed()});
    trace.iterations = k;
    if (cfg.gap_tol > 0.0 && res <= cfg.gap_tol) {
      if (!due) trace.records.push_back({k, beta, f, res, elapsed()});
      trace.converged = true;
      return trace;
    }
  }
  trace.converged = cfg.gap_tol <= 0.0;
  return trace;
}

IterateTrace solve_sla(const LassoProblem& problem, const SurrogateParams& params,
                       const Vector& x0, const SolverConfig& cfg) {
  check_start(problem, x0);
  if (!(params.alpha > 0)) {
    throw DimensionError("solve_sla: alpha must be positive");
  }
  const double mu =
      1.0 / (problem.lipschitz() + problem.lambda() * params.alpha / 2.0);
  if (!(mu > 0) || !std::isfinite(mu)) {
    throw DegenerateProblemError("solve_sla: L = 0 with lambda = 0");
  }

  detail::EngineOptions opts;
  opts.rule = StepRule::fixed(mu);
  opts.schedule = MomentumSchedule::kNesterovRatio;
  opts.max_iters = cfg.max_iters;
  opts.gap_tol = cfg.gap_tol;
  opts.record_every = cfg.record_every;
  opts.algorithm = "sla";

  ScalarFn g = [&problem, params](const Vector& v) {
    return problem.surrogate_objective(v, params);
  };
  VectorFn grad = [&problem, params](const Vector& v) {
    return problem.surrogate_grad(v, params);
  };
  ScalarFn value = [&problem](const Vector& v) { return problem.objective(v); };
  ScalarFn residual = [&problem](const Vector& v) { return problem.kkt_residual(v); };
  return detail::agd_engine(g, grad, ProxFn(), x0, opts, value, residual, g);
}

}  // namespace lassokit
