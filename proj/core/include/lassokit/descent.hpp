#pragma once

#include <functional>

#include "lassokit/linalg.hpp"
#include "lassokit/trace.hpp"

namespace lassokit {

using ScalarFn = std::function<double(const Vector&)>;
using VectorFn = std::function<Vector(const Vector&)>;
/// prox(x, t) = argmin_z (1/2t)||x - z||^2 + h(z).
using ProxFn = std::function<Vector(const Vector&, double)>;

enum class StepMode { kFixed, kBacktracking };

struct StepRule {
  StepMode mode = StepMode::kFixed;
  double gamma = 1.0;   // fixed mode; should satisfy gamma <= 1/L
  double shrink = 0.5;  // backtracking factor in (0,1)

  static StepRule fixed(double gamma) { return {StepMode::kFixed, gamma, 0.5}; }
  static StepRule backtracking(double shrink = 0.5) {
    return {StepMode::kBacktracking, 1.0, shrink};
  }
};

/// none: plain (proximal) gradient steps.
/// nesterov_ratio: extrapolation weight max(0, (k-2)/(k+1)), with the
///   convention x^(-1) = x^(0) so the k = 1 weight clamps to zero.
/// fista_t: weight (t_{k-1}-1)/t_k with t_1 = 1,
///   t_{k+1} = (1 + sqrt(1+4 t_k^2))/2.
enum class MomentumSchedule { kNone, kNesterovRatio, kFistaT };

/// Largest gamma = shrink^m, m >= 0, with
/// f(x - gamma grad) <= f(x) - (gamma/2) ||grad||^2.
/// Throws LineSearchError if no step above 1e-15 qualifies.
double backtracking_search(const ScalarFn& f, const Vector& grad,
                           const Vector& x, double shrink);

/// Elementwise soft-threshold at t * lambda: the prox of lambda ||.||_1.
Vector prox_l1(const Vector& x, double t, double lambda);

/// Gradient descent for `iters` iterations, recording every iterate.
/// Residual column carries the gradient sup-norm. Throws DivergenceError on
/// non-finite values.
IterateTrace run_gd(const ScalarFn& f, const VectorFn& grad, const Vector& x0,
                    const StepRule& rule, int iters);

/// Accelerated proximal gradient on f = g + h for `iters` iterations.
/// `h_value` (optional) is added to g when recording objective values;
/// `prox_h` may be empty for h = 0. Residual column carries the composite
/// gradient-mapping sup-norm ||x_k - prox(x_k - gamma grad g(x_k))|| / gamma.
IterateTrace run_agd(const ScalarFn& g, const VectorFn& grad_g,
                     const ProxFn& prox_h, const Vector& x0,
                     const StepRule& rule, MomentumSchedule schedule, int iters,
                     const ScalarFn& h_value = {});

namespace detail {

/// Shared iteration engine behind run_agd and the Lasso solvers. Runs
///   z   = x + w_k (x - x_prev)
///   x^+ = prox(z - gamma grad(z), gamma)
/// recording value_fn(x^+) and residual_fn(x^+) every `record_every`
/// iterations (and always the final one). Stops early once residual <=
/// gap_tol when gap_tol > 0.
struct EngineOptions {
  StepRule rule;
  MomentumSchedule schedule = MomentumSchedule::kNone;
  int max_iters = 1000;
  double gap_tol = 0.0;
  int record_every = 1;
  std::string algorithm;
};

IterateTrace agd_engine(const ScalarFn& g, const VectorFn& grad_g,
                        const ProxFn& prox_h, const Vector& x0,
                        const EngineOptions& opts, const ScalarFn& value_fn,
                        const ScalarFn& residual_fn,
                        const ScalarFn& extra_value_fn = {});

}  // namespace detail

}  // namespace lassokit
