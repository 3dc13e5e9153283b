#include <benchmark/benchmark.h>

#include "lassokit/datagen.hpp"
#include "lassokit/pathwise.hpp"
#include "lassokit/solvers.hpp"

namespace {

using lassokit::LassoProblem;
using lassokit::SolverConfig;
using lassokit::Vector;

lassokit::GenResult make_instance(Eigen::Index n, Eigen::Index p) {
  lassokit::GenSpec spec;
  spec.n = n;
  spec.p = p;
  spec.sparsity = std::max<Eigen::Index>(1, p / 5);
  spec.seed = 7;
  return lassokit::gen_linear(spec);
}

SolverConfig bench_config() {
  SolverConfig cfg;
  cfg.max_iters = 200;
  cfg.record_every = 200;
  return cfg;
}

void BM_ProblemSetup(benchmark::State& state) {
  const auto gen = make_instance(state.range(0), state.range(1));
  for (auto _ : state) {
    LassoProblem pb(gen.x, gen.y, 0.1);
    benchmark::DoNotOptimize(pb.lipschitz());
  }
}
BENCHMARK(BM_ProblemSetup)->Args({100, 50})->Args({400, 100});

void BM_Ista(benchmark::State& state) {
  const auto gen = make_instance(state.range(0), state.range(1));
  const LassoProblem pb(gen.x, gen.y, 0.1 * lassokit::lambda_max({gen.x, gen.y, 0.0}));
  const Vector x0 = Vector::Zero(pb.p());
  for (auto _ : state) {
    benchmark::DoNotOptimize(lassokit::solve_ista(pb, x0, bench_config()));
  }
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_Ista)->Args({100, 50})->Args({400, 100});

void BM_Fista(benchmark::State& state) {
  const auto gen = make_instance(state.range(0), state.range(1));
  const LassoProblem pb(gen.x, gen.y, 0.1 * lassokit::lambda_max({gen.x, gen.y, 0.0}));
  const Vector x0 = Vector::Zero(pb.p());
  for (auto _ : state) {
    benchmark::DoNotOptimize(lassokit::solve_fista(pb, x0, bench_config()));
  }
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_Fista)->Args({100, 50})->Args({400, 100});

void BM_Cgda(benchmark::State& state) {
  const auto gen = make_instance(state.range(0), state.range(1));
  const LassoProblem pb(gen.x, gen.y, 0.1 * lassokit::lambda_max({gen.x, gen.y, 0.0}));
  const Vector x0 = Vector::Zero(pb.p());
  for (auto _ : state) {
    benchmark::DoNotOptimize(lassokit::solve_cgda(pb, x0, bench_config()));
  }
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_Cgda)->Args({100, 50})->Args({400, 100});

void BM_Sla(benchmark::State& state) {
  const auto gen = make_instance(state.range(0), state.range(1));
  const LassoProblem pb(gen.x, gen.y, 0.1 * lassokit::lambda_max({gen.x, gen.y, 0.0}));
  const Vector x0 = Vector::Zero(pb.p());
  for (auto _ : state) {
    benchmark::DoNotOptimize(lassokit::solve_sla(pb, {200.0}, x0, bench_config()));
  }
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_Sla)->Args({100, 50})->Args({400, 100});

void BM_FullPath(benchmark::State& state) {
  const auto gen = make_instance(state.range(0), state.range(1));
  const LassoProblem pb(gen.x, gen.y, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lassokit::solve_path(pb));
  }
}
BENCHMARK(BM_FullPath)->Args({60, 15})->Args({200, 40});

}  // namespace

BENCHMARK_MAIN();
