#include "lassokit/descent.hpp"

#include <chrono>
#include <cmath>

#include "lassokit/errors.hpp"
#include "lassokit/problem.hpp"

namespace lassokit {

double backtracking_search(const ScalarFn& f, const Vector& grad,
                           const Vector& x, double shrink) {
  if (!(shrink > 0.0 && shrink < 1.0)) {
    throw DimensionError("backtracking_search: shrink must lie in (0,1)");
  }
  const double g2 = grad.squaredNorm();
  const double fx = f(x);
  double gamma = 1.0;
  while (f(x - gamma * grad) > fx - 0.5 * gamma * g2) {
    gamma *= shrink;
    if (gamma < 1e-15) {
      throw LineSearchError("backtracking_search: no acceptable step above 1e-15");
    }
  }
  return gamma;
}

Vector prox_l1(const Vector& x, double t, double lambda) {
  if (!(t > 0)) {
    throw DimensionError("prox_l1: step must be positive");
  }
  if (lambda < 0) {
    throw DimensionError("prox_l1: lambda must be nonnegative");
  }
  return soft_threshold(x, t * lambda);
}

namespace {

std::int64_t ns_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

IterateTrace run_gd(const ScalarFn& f, const VectorFn& grad, const Vector& x0,
                    const StepRule& rule, int iters) {
  if (iters < 1) {
    throw DimensionError("run_gd: iters must be >= 1");
  }
  const auto start = std::chrono::steady_clock::now();
  IterateTrace trace;
  trace.algorithm = "gd";
  Vector x = x0;
  trace.records.push_back({0, x, f(x), grad(x).cwiseAbs().maxCoeff(), ns_since(start)});
  for (int k = 1; k <= iters; ++k) {
    const Vector g = grad(x);
    if (!g.allFinite()) {
      throw DivergenceError("run_gd: non-finite gradient", k);
    }
    const double gamma = rule.mode == StepMode::kFixed
                             ? rule.gamma
                             : backtracking_search(f, g, x, rule.shrink);
    x -= gamma * g;
    const double fx = f(x);
    if (!std::isfinite(fx)) {
      throw DivergenceError("run_gd: non-finite objective", k);
    }
    trace.records.push_back({k, x, fx, grad(x).cwiseAbs().maxCoeff(), ns_since(start)});
  }
  trace.iterations = iters;
  trace.converged = true;
  return trace;
}

namespace detail {

IterateTrace agd_engine(const ScalarFn& g, const VectorFn& grad_g,
                        const ProxFn& prox_h, const Vector& x0,
                        const EngineOptions& opts, const ScalarFn& value_fn,
                        const ScalarFn& residual_fn,
                        const ScalarFn& extra_value_fn) {
  if (opts.max_iters < 1) {
    throw DimensionError("agd_engine: max_iters must be >= 1");
  }
  if (opts.record_every < 1) {
    throw DimensionError("agd_engine: record_every must be >= 1");
  }
  const auto start = std::chrono::steady_clock::now();
  IterateTrace trace;
  trace.algorithm = opts.algorithm;

  Vector x = x0;
  Vector x_prev = x0;  // x^(-1) = x^(0)
  double t_prev = 1.0, t_cur = 1.0;

  auto record = [&](int k, const Vector& v) {
    TraceRecord rec;
    rec.k = k;
    rec.beta = v;
    rec.objective = value_fn(v);
    rec.residual = residual_fn ? residual_fn(v) : 0.0;
    rec.elapsed_ns = ns_since(start);
    if (!std::isfinite(rec.objective)) {
      throw DivergenceError(opts.algorithm + ": non-finite objective", k);
    }
    trace.records.push_back(std::move(rec));
    if (extra_value_fn) trace.surrogate_objective.push_back(extra_value_fn(v));
  };

  record(0, x);

  for (int k = 1; k <= opts.max_iters; ++k) {
    double weight = 0.0;
    switch (opts.schedule) {
      case MomentumSchedule::kNone:
        break;
      case MomentumSchedule::kNesterovRatio:
        weight = std::max(0.0, (k - 2.0) / (k + 1.0));
        break;
      case MomentumSchedule::kFistaT:
        weight = (t_prev - 1.0) / t_cur;
        break;
    }
    Vector z = weight == 0.0 ? x : Vector(x + weight * (x - x_prev));
    Vector gz = grad_g(z);
    if (!gz.allFinite()) {
      throw DivergenceError(opts.algorithm + ": non-finite gradient", k);
    }
    const double gamma = opts.rule.mode == StepMode::kFixed
                             ? opts.rule.gamma
                             : backtracking_search(g, gz, z, opts.rule.shrink);
    Vector x_next = z - gamma * gz;
    if (prox_h) x_next = prox_h(x_next, gamma);

    x_prev = x;
    x = std::move(x_next);
    if (opts.schedule == MomentumSchedule::kFistaT) {
      t_prev = t_cur;
      t_cur = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_cur * t_cur));
    }

    const bool due = (k % opts.record_every == 0) || k == opts.max_iters;
    if (due) record(k, x);
    trace.iterations = k;
    if (opts.gap_tol > 0.0) {
      const double res = due ? trace.records.back().residual
                             : (residual_fn ? residual_fn(x) : 0.0);
      if (res <= opts.gap_tol) {
        if (!due) record(k, x);
        trace.converged = true;
        return trace;
      }
    }
  }
  trace.converged = opts.gap_tol <= 0.0;
  return trace;
}

}  // namespace detail

IterateTrace run_agd(const ScalarFn& g, const VectorFn& grad_g,
                     const ProxFn& prox_h, const Vector& x0,
                     const StepRule& rule, MomentumSchedule schedule, int iters,
                     const ScalarFn& h_value) {
  detail::EngineOptions opts;
  opts.rule = rule;
  opts.schedule = schedule;
  opts.max_iters = iters;
  opts.gap_tol = 0.0;
  opts.record_every = 1;
  opts.algorithm = "agd";

  ScalarFn value = h_value
                       ? ScalarFn([&g, &h_value](const Vector& v) { return g(v) + h_value(v); })
                       : g;
  ScalarFn residual = [&](const Vector& v) {
    const Vector gv = grad_g(v);
    const double gamma = rule.mode == StepMode::kFixed ? rule.gamma : 1.0;
    Vector step = v - gamma * gv;
    if (prox_h) step = prox_h(step, gamma);
    return (v - step).cwiseAbs().maxCoeff() / gamma;
  };
  return detail::agd_engine(g, grad_g, prox_h, x0, opts, value, residual);
}

}  // namespace lassokit
