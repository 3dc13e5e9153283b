#include "lassokit/verify.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "lassokit/errors.hpp"

namespace lassokit {

std::string theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::kT1Ista: return "T1-ISTA";
    case TheoremId::kT2Fista: return "T2-FISTA";
    case TheoremId::kT3Cgda: return "T3-CGDA";
    case TheoremId::kT4Sla: return "T4-SLA";
    case TheoremId::kL1Gd: return "L1-GD";
    case TheoremId::kL2Agd: return "L2-AGD";
  }
  return "unknown";
}

TheoremId theorem_for_algorithm(const std::string& algorithm) {
  if (algorithm == "ista") return TheoremId::kT1Ista;
  if (algorithm == "fista") return TheoremId::kT2Fista;
  if (algorithm == "cgda") return TheoremId::kT3Cgda;
  if (algorithm == "sla") return TheoremId::kT4Sla;
  if (algorithm == "gd") return TheoremId::kL1Gd;
  if (algorithm == "agd") return TheoremId::kL2Agd;
  throw DimensionError("no rate theorem for algorithm '" + algorithm + "'");
}

namespace {

std::vector<int> detect_support(const Vector& beta) {
  const double thresh = 1e-9 * std::max(1.0, beta.cwiseAbs().maxCoeff());
  std::vector<int> support;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (std::abs(beta(j)) > thresh) support.push_back(static_cast<int>(j));
  }
  return support;
}

BoundReport finalize(BoundReport report, double allowance) {
  report.holds = true;
  report.violated_at = -1;
  report.min_slack = std::numeric_limits<double>::infinity();
  for (const BoundRow& row : report.rows) {
    report.min_slack = std::min(report.min_slack, row.slack);
    if (row.slack < allowance && report.violated_at < 0) {
      report.holds = false;
      report.violated_at = row.k;
    }
  }
  if (report.rows.empty()) report.min_slack = 0.0;
  return report;
}

}  // namespace

Vector oracle_solve(const LassoProblem& problem, double tol) {
  if (tol < 1e-12) {
    throw DimensionError("oracle_solve: tol must be >= 1e-12");
  }
  SolverConfig cfg;
  cfg.max_iters = 500000;
  cfg.gap_tol = tol / 10.0;
  cfg.record_every = cfg.max_iters;
  const IterateTrace run = solve_fista(problem, Vector::Zero(problem.p()), cfg);
  if (!run.converged) {
    throw ConvergenceError("oracle_solve: FISTA did not reach the target residual");
  }
  Vector beta = run.last().beta;

  // support must hold still over 100 extra prox-gradient iterations
  const double gamma = 1.0 / problem.lipschitz();
  const std::vector<int> support = detect_support(beta);
  Vector probe = beta;
  for (int it = 0; it < 100; ++it) {
    probe = prox_l1(probe - gamma * problem.grad_smooth(probe), gamma, problem.lambda());
    if (detect_support(probe) != support) {
      throw ConvergenceError("oracle_solve: support unstable across final 100 iterations");
    }
  }

  if (support.empty()) {
    const Vector zero = Vector::Zero(problem.p());
    if (problem.kkt_residual(zero) <= tol) return zero;
    throw ConvergenceError("oracle_solve: empty support but zero is not optimal");
  }

  // polish: sign-restricted normal equations on the detected support
  const auto k = static_cast<Eigen::Index>(support.size());
  Matrix g(k, k);
  Vector rhs(k), signs(k);
  const double nlambda = static_cast<double>(problem.n()) * problem.lambda();
  for (Eigen::Index i = 0; i < k; ++i) {
    signs(i) = beta(support[static_cast<std::size_t>(i)]) >= 0 ? 1.0 : -1.0;
    rhs(i) = problem.xty()(support[static_cast<std::size_t>(i)]) - nlambda * signs(i);
    for (Eigen::Index l = 0; l < k; ++l) {
      g(i, l) = problem.gram()(support[static_cast<std::size_t>(i)],
                               support[static_cast<std::size_t>(l)]);
    }
  }
  const Matrix lower = cholesky_factor(g, "oracle support");
  const Vector sol = cholesky_solve(lower, rhs);
  bool signs_ok = true;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (sol(i) * signs(i) <= 0) signs_ok = false;
  }
  if (signs_ok) {
    Vector polished = Vector::Zero(problem.p());
    for (Eigen::Index i = 0; i < k; ++i) {
      polished(support[static_cast<std::size_t>(i)]) = sol(i);
    }
    if (problem.kkt_residual(polished) <= tol) return polished;
  }
  if (problem.kkt_residual(beta) <= tol) return beta;
  throw ConvergenceError("oracle_solve: polish failed to reach the target residual");
}

BoundReport check_bound(const IterateTrace& trace, const LassoProblem& problem,
                        const Vector& beta_hat, TheoremId theorem,
                        double allowance) {
  if (theorem_for_algorithm(trace.algorithm) != theorem) {
    throw DimensionError("check_bound: trace algorithm '" + trace.algorithm +
                         "' does not match theorem " + theorem_name(theorem));
  }
  if (trace.records.empty() || trace.records.front().k != 0) {
    throw DimensionError("check_bound: trace must include the k = 0 record");
  }
  const double L = problem.lipschitz();
  const double p = static_cast<double>(problem.p());
  const double n = static_cast<double>(problem.n());
  const double lambda = problem.lambda();
  const double r2 = (trace.records.front().beta - beta_hat).squaredNorm();
  const double r = std::sqrt(r2);
  const double f_hat = problem.objective(beta_hat);

  BoundReport report;
  report.theorem = theorem;
  for (const TraceRecord& rec : trace.records) {
    if (rec.k < 1) continue;
    const double k = rec.k;
    double rhs = 0.0;
    switch (theorem) {
      case TheoremId::kT1Ista:
        rhs = L * r2 / (2.0 * k);
        break;
      case TheoremId::kT2Fista:
        rhs = 2.0 * L * r2 / ((k + 1.0) * (k + 1.0));
        break;
      case TheoremId::kT3Cgda:
        rhs = 4.0 * L * (1.0 + p) * r2 / (k + 8.0 / p);
        break;
      case TheoremId::kT4Sla:
        rhs = 4.0 * r2 * L / (k * k) +
              4.0 * std::sqrt(2.0 * lambda * n * std::log(2.0)) * r / k;
        break;
      default:
        throw DimensionError("check_bound: lemma ids belong to check_lemma_bound");
    }
    const double gap = rec.objective - f_hat;
    report.rows.push_back({rec.k, gap, rhs, rhs - gap});
  }
  return finalize(std::move(report), allowance);
}

BoundReport check_lemma_bound(const IterateTrace& trace, double optimal_value,
                              double start_dist_sq, double gamma, TheoremId lemma,
                              double allowance) {
  if (lemma != TheoremId::kL1Gd && lemma != TheoremId::kL2Agd) {
    throw DimensionError("check_lemma_bound: expects L1-GD or L2-AGD");
  }
  BoundReport report;
  report.theorem = lemma;
  for (const TraceRecord& rec : trace.records) {
    if (rec.k < 1) continue;
    const double k = rec.k;
    const double rhs = lemma == TheoremId::kL1Gd
                           ? start_dist_sq / (2.0 * gamma * k)
                           : 2.0 * start_dist_sq / (gamma * (k + 1.0) * (k + 1.0));
    const double gap = rec.objective - optimal_value;
    report.rows.push_back({rec.k, gap, rhs, rhs - gap});
  }
  return finalize(std::move(report), allowance);
}

BenchResult bench_run(const LassoProblem& problem,
                      const std::vector<std::string>& algos,
                      const SolverConfig& cfg, const SurrogateParams& sla_params) {
  if (algos.empty()) {
    throw DimensionError("bench_run: need at least one solver");
  }
  for (const std::string& algo : algos) {
    if (algo != "ista" && algo != "fista" && algo != "cgda" && algo != "sla") {
      throw DimensionError("bench_run: unknown solver '" + algo + "'");
    }
  }

  BenchResult result;
  result.beta_hat = oracle_solve(problem, 1e-10);
  result.oracle_objective = problem.objective(result.beta_hat);

  auto run_one = [&](const std::string& algo) {
    const Vector x0 = Vector::Zero(problem.p());
    const auto t0 = std::chrono::steady_clock::now();
    IterateTrace trace;
    if (algo == "ista") trace = solve_ista(problem, x0, cfg);
    else if (algo == "fista") trace = solve_fista(problem, x0, cfg);
    else if (algo == "cgda") trace = solve_cgda(problem, x0, cfg);
    else trace = solve_sla(problem, sla_params, x0, cfg);
    const auto t1 = std::chrono::steady_clock::now();

    SolverBenchRow row;
    row.algo = algo;
    row.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    row.final_kkt = trace.last().residual;
    row.targets = {GapTarget{1e-2}, GapTarget{1e-4}, GapTarget{1e-6}};
    for (const TraceRecord& rec : trace.records) {
      if (rec.k < 1) continue;
      const double gap = rec.objective - result.oracle_objective;
      for (GapTarget& t : row.targets) {
        if (t.iterations < 0 && gap <= t.target) t.iterations = rec.k;
      }
    }
    row.bounds = check_bound(trace, problem, result.beta_hat,
                             theorem_for_algorithm(algo));
    row.trace = std::move(trace);
    return row;
  };

  std::vector<std::future<SolverBenchRow>> futures;
  futures.reserve(algos.size());
  for (const std::string& algo : algos) {
    futures.push_back(std::async(std::launch::async, run_one, algo));
  }
  for (auto& fut : futures) result.rows.push_back(fut.get());
  return result;
}

}  // namespace lassokit
