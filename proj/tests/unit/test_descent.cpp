#include <doctest.h>

#include <cmath>
#include <random>

#include "lassokit/descent.hpp"
#include "lassokit/errors.hpp"
#include "lassokit/solvers.hpp"
#include "test_util.hpp"

using lassokit::Matrix;
using lassokit::MomentumSchedule;
using lassokit::ScalarFn;
using lassokit::StepRule;
using lassokit::Vector;

namespace {

struct Quadratic {
  // f(x) = 0.5 x'Ax - b'x with diagonal A, so x* and f* are exact
  Vector diag;
  Vector b;

  double value(const Vector& x) const {
    return 0.5 * x.dot(diag.cwiseProduct(x)) - b.dot(x);
  }
  Vector grad(const Vector& x) const { return diag.cwiseProduct(x) - b; }
  Vector minimizer() const { return b.cwiseQuotient(diag); }
  double optimum() const { return value(minimizer()); }
  double lipschitz() const { return diag.maxCoeff(); }
};

Quadratic test_quadratic() {
  Quadratic q;
  q.diag = Vector(5);
  q.diag << 4.0, 2.0, 1.0, 0.5, 0.25;
  q.b = Vector(5);
  q.b << 1.0, -2.0, 0.5, 1.0, -1.0;
  return q;
}

}  // namespace

TEST_CASE("gd takes the exact step on f(x) = x^2/2") {
  Vector x0(1);
  x0 << 1.0;
  auto trace = lassokit::run_gd(
      [](const Vector& x) { return 0.5 * x.squaredNorm(); },
      [](const Vector& x) { return x; }, x0, StepRule::fixed(1.0), 1);
  CHECK(trace.records.back().beta(0) == 0.0);
}

TEST_CASE("gd with fixed step satisfies the 1/(2 gamma k) rate on a quadratic") {
  const Quadratic q = test_quadratic();
  const double gamma = 1.0 / q.lipschitz();
  const Vector x0 = Vector::Zero(5);
  auto trace = lassokit::run_gd([&q](const Vector& x) { return q.value(x); },
                                [&q](const Vector& x) { return q.grad(x); }, x0,
                                StepRule::fixed(gamma), 300);
  const double r2 = (x0 - q.minimizer()).squaredNorm();
  for (const auto& rec : trace.records) {
    if (rec.k < 1) continue;
    CHECK(rec.objective - q.optimum() <= r2 / (2.0 * gamma * rec.k) + 1e-12);
  }
}

TEST_CASE("gd objective sequence is monotone") {
  const Quadratic q = test_quadratic();
  auto trace = lassokit::run_gd([&q](const Vector& x) { return q.value(x); },
                                [&q](const Vector& x) { return q.grad(x); },
                                Vector::Ones(5), StepRule::fixed(1.0 / q.lipschitz()),
                                100);
  for (std::size_t i = 1; i < trace.records.size(); ++i) {
    CHECK(trace.records[i].objective <= trace.records[i - 1].objective + 1e-14);
  }
}

TEST_CASE("gd with backtracking closes the gap on the quadratic") {
  const Quadratic q = test_quadratic();
  auto trace = lassokit::run_gd([&q](const Vector& x) { return q.value(x); },
                                [&q](const Vector& x) { return q.grad(x); },
                                Vector::Ones(5), StepRule::backtracking(0.5), 200);
  CHECK(trace.records.back().objective - q.optimum() <= 1e-8);
}

TEST_CASE("gd reports divergence with the iteration") {
  const Quadratic q = test_quadratic();
  try {
    lassokit::run_gd([&q](const Vector& x) { return q.value(x); },
                     [&q](const Vector& x) { return q.grad(x); }, Vector::Ones(5),
                     StepRule::fixed(1e6), 2000);
    FAIL("expected divergence");
  } catch (const lassokit::DivergenceError& e) {
    CHECK(e.iteration >= 1);
  }
}

TEST_CASE("backtracking accepts the unit step when it already decreases") {
  const ScalarFn half_sq = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
  Vector x(1);
  x << 1.0;
  Vector g(1);
  g << 1.0;
  CHECK(lassokit::backtracking_search(half_sq, g, x, 0.5) == 1.0);
}

TEST_CASE("backtracking halves down to 1/L on a stiff quadratic") {
  // f(x) = 2 x^2 has L = 4; shrink 0.5 lands exactly on 0.25
  const ScalarFn f = [](const Vector& x) { return 2.0 * x.squaredNorm(); };
  Vector x(1);
  x << 1.0;
  Vector g(1);
  g << 4.0;
  CHECK(lassokit::backtracking_search(f, g, x, 0.5) == 0.25);
}

TEST_CASE("backtracking returns 1 at a stationary point") {
  const ScalarFn f = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
  CHECK(lassokit::backtracking_search(f, Vector::Zero(3), Vector::Zero(3), 0.5) == 1.0);
}

TEST_CASE("prox_l1 with lambda 0 is the identity") {
  std::mt19937_64 gen(31);
  const Vector x = lktest::random_vector(gen, 6, 3.0);
  CHECK((lassokit::prox_l1(x, 0.7, 0.0) - x).isZero(0.0));
}

TEST_CASE("prox_l1 soft-thresholds elementwise") {
  Vector x(2);
  x << 3.0, -0.5;
  const Vector out = lassokit::prox_l1(x, 1.0, 1.0);
  CHECK(out(0) == 2.0);
  CHECK(out(1) == 0.0);
  CHECK_THROWS_AS(lassokit::prox_l1(x, 0.0, 1.0), lassokit::DimensionError);
}

TEST_CASE("prox_l1 minimizes the prox objective against a 1-D grid scan") {
  std::mt19937_64 gen(32);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  const double t = 0.8, lambda = 0.6;
  for (int trial = 0; trial < 10; ++trial) {
    Vector x(1);
    x << dist(gen);
    const double z_star = lassokit::prox_l1(x, t, lambda)(0);
    const double best =
        0.5 / t * (x(0) - z_star) * (x(0) - z_star) + lambda * std::abs(z_star);
    for (int i = -4000; i <= 4000; ++i) {
      const double z = i / 1000.0;
      const double value = 0.5 / t * (x(0) - z) * (x(0) - z) + lambda * std::abs(z);
      CHECK(best <= value + 1e-6);
    }
  }
}

TEST_CASE("agd with h = 0 satisfies the 2/(gamma (k+1)^2) rate") {
  const Quadratic q = test_quadratic();
  const double gamma = 1.0 / q.lipschitz();
  const Vector x0 = Vector::Zero(5);
  const double r2 = (x0 - q.minimizer()).squaredNorm();
  for (const auto schedule :
       {MomentumSchedule::kNesterovRatio, MomentumSchedule::kFistaT}) {
    auto trace = lassokit::run_agd([&q](const Vector& x) { return q.value(x); },
                                   [&q](const Vector& x) { return q.grad(x); },
                                   lassokit::ProxFn(), x0, StepRule::fixed(gamma),
                                   schedule, 300);
    for (const auto& rec : trace.records) {
      if (rec.k < 1) continue;
      const double rhs = 2.0 * r2 / (gamma * (rec.k + 1.0) * (rec.k + 1.0));
      CHECK(rec.objective - q.optimum() <= rhs + 1e-12);
    }
  }
}

TEST_CASE("agd with the fista schedule reproduces solve_fista iterate for iterate") {
  lassokit::LassoProblem pb = lktest::corpus_problem(3);
  lassokit::SolverConfig cfg;
  cfg.max_iters = 60;
  const Vector x0 = Vector::Zero(pb.p());
  const auto fista = lassokit::solve_fista(pb, x0, cfg);

  const double lambda = pb.lambda();
  const auto agd = lassokit::run_agd(
      [&pb](const Vector& v) { return pb.smooth_value(v); },
      [&pb](const Vector& v) { return pb.grad_smooth(v); },
      [lambda](const Vector& v, double t) { return lassokit::prox_l1(v, t, lambda); },
      x0, StepRule::fixed(1.0 / pb.lipschitz()), MomentumSchedule::kFistaT,
      cfg.max_iters,
      [&pb, lambda](const Vector& v) {
        double pen = 0.0;
        for (Eigen::Index i = 0; i < v.size(); ++i) pen += std::abs(v(i));
        return lambda * pen;
      });

  REQUIRE(agd.records.size() == fista.records.size());
  for (std::size_t i = 0; i < agd.records.size(); ++i) {
    CHECK((agd.records[i].beta - fista.records[i].beta).isZero(0.0));
  }
}

TEST_CASE("agd with the nesterov schedule reproduces solve_sla iterate for iterate") {
  lassokit::LassoProblem pb = lktest::corpus_problem(3);
  const lassokit::SurrogateParams params{120.0};
  lassokit::SolverConfig cfg;
  cfg.max_iters = 60;
  const Vector x0 = Vector::Zero(pb.p());
  const auto sla = lassokit::solve_sla(pb, params, x0, cfg);

  const double mu = 1.0 / (pb.lipschitz() + pb.lambda() * params.alpha / 2.0);
  const auto agd = lassokit::run_agd(
      [&pb, params](const Vector& v) { return pb.surrogate_objective(v, params); },
      [&pb, params](const Vector& v) { return pb.surrogate_grad(v, params); },
      lassokit::ProxFn(), x0, StepRule::fixed(mu), MomentumSchedule::kNesterovRatio,
      cfg.max_iters);

  REQUIRE(agd.records.size() == sla.records.size());
  for (std::size_t i = 0; i < agd.records.size(); ++i) {
    CHECK((agd.records[i].beta - sla.records[i].beta).isZero(0.0));
  }
}
