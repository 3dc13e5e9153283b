// lassokit command line: fit datasets, trace regularization paths, run the
// benchmark/bound harness, generate synthetic data, and emit the plot data
// behind the surrogate/convergence/counterexample figures.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lassokit/dataset.hpp"
#include "lassokit/datagen.hpp"
#include "lassokit/errors.hpp"
#include "lassokit/pathwise.hpp"
#include "lassokit/problem.hpp"
#include "lassokit/solvers.hpp"
#include "lassokit/verify.hpp"

namespace lk = lassokit;

namespace {

std::string join_support_1based(const std::vector<int>& idx) {
  std::ostringstream os;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) os << ";";
    os << idx[i] + 1;
  }
  return os.str();
}

void write_trace_csv(const std::string& path, const lk::IterateTrace& trace) {
  std::ofstream out(path);
  if (!out) throw lk::Error("cannot write '" + path + "'");
  out << "k,objective,kkt,elapsed_ns\n";
  for (const lk::TraceRecord& rec : trace.records) {
    out << rec.k << "," << lk::format_double(rec.objective) << ","
        << lk::format_double(rec.residual) << "," << rec.elapsed_ns << "\n";
  }
}

void print_coefficients(const lk::Dataset& data, const lk::Vector& beta) {
  std::cout << "feature,coefficient\n";
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    std::cout << data.feature_names[static_cast<std::size_t>(j)] << ","
              << lk::format_double(beta(j)) << "\n";
  }
}

struct FitArgs {
  std::string data_path;
  double lambda = 0.0;
  std::string algo;
  double alpha = 0.0;
  bool alpha_set = false;
  int max_iters = 100000;
  double tol = 1e-8;
  std::string trace_path;
};

int run_fit(const FitArgs& args) {
  const lk::Dataset data = lk::read_dataset_csv(args.data_path);
  if (args.lambda < 0) {
    std::cerr << "error: lambda must be nonnegative\n";
    return 1;
  }

  if (args.algo == "lars") {
    const lk::LarsTrace lars = lk::solve_lars(data.x, data.y);
    print_coefficients(data, lars.beta);
    if (!args.trace_path.empty()) {
      const lk::LassoProblem problem(data.x, data.y, args.lambda);
      lk::IterateTrace trace;
      trace.algorithm = "lars";
      int k = 0;
      for (const lk::LarsStep& step : lars.steps) {
        trace.records.push_back({++k, step.beta, problem.objective(step.beta),
                                 problem.kkt_residual(step.beta), 0});
      }
      write_trace_csv(args.trace_path, trace);
    }
    return 0;
  }

  const lk::LassoProblem problem(data.x, data.y, args.lambda);
  if (args.algo == "pfa") {
    const lk::RegPath path = lk::solve_path(problem, lk::PathMode::kFull, args.lambda);
    const lk::Vector beta = lk::eval_path_at(path, args.lambda);
    print_coefficients(data, beta);
    if (!args.trace_path.empty()) {
      lk::IterateTrace trace;
      trace.algorithm = "pfa";
      int k = 0;
      for (const double kink : path.kinks) {
        const lk::Vector b = lk::eval_path_at(path, kink);
        trace.records.push_back({k++, b, problem.objective(b), problem.kkt_residual(b), 0});
      }
      write_trace_csv(args.trace_path, trace);
    }
    return 0;
  }

  lk::SolverConfig cfg;
  cfg.max_iters = args.max_iters;
  cfg.gap_tol = args.tol;
  const lk::Vector x0 = lk::Vector::Zero(problem.p());
  lk::IterateTrace trace;
  if (args.algo == "ista") {
    trace = lk::solve_ista(problem, x0, cfg);
  } else if (args.algo == "fista") {
    trace = lk::solve_fista(problem, x0, cfg);
  } else if (args.algo == "cgda") {
    trace = lk::solve_cgda(problem, x0, cfg);
  } else if (args.algo == "sla") {
    if (!args.alpha_set) {
      std::cerr << "error: --alpha is required for sla\n";
      return 1;
    }
    trace = lk::solve_sla(problem, {args.alpha}, x0, cfg);
  } else {
    std::cerr << "error: unknown algorithm '" << args.algo << "'\n";
    return 1;
  }

  print_coefficients(data, trace.last().beta);
  if (!args.trace_path.empty()) write_trace_csv(args.trace_path, trace);
  return trace.converged ? 0 : 2;
}

struct PathArgs {
  std::string data_path;
  double min_lambda = 0.0;
  std::string mode = "full";
  std::string out_path;
};

int run_path(const PathArgs& args) {
  const lk::Dataset data = lk::read_dataset_csv(args.data_path);
  const lk::LassoProblem problem(data.x, data.y, 0.0);
  const lk::PathMode mode = args.mode == "insertion-only"
                                ? lk::PathMode::kInsertionOnly
                                : lk::PathMode::kFull;
  const lk::RegPath path = lk::solve_path(problem, mode, args.min_lambda);

  std::ofstream out(args.out_path);
  if (!out) throw lk::Error("cannot write '" + args.out_path + "'");
  out << "seg,lambda_hi,lambda_lo,support\n";
  int seg = 0;
  for (const lk::PathSegment& segment : path.segments) {
    out << ++seg << "," << lk::format_double(segment.lambda_hi) << ","
        << lk::format_double(segment.lambda_lo) << ","
        << join_support_1based(segment.support.indices);
    for (Eigen::Index i = 0; i < segment.intercept.size(); ++i) {
      out << "," << lk::format_double(segment.intercept(i)) << ","
          << lk::format_double(segment.slope(i));
    }
    out << "\n";
  }

  if (path.status == lk::PathStatus::kFailedInsertion) {
    const lk::PathDiagnostic& diag = *path.diagnostic;
    std::cout << "failed_insertion\n";
    std::cout << "loop: " << diag.loop << "\n";
    std::cout << "message: " << diag.message << "\n";
    std::cout << "support: " << join_support_1based(diag.support.indices) << "\n";
    std::cout << "rhs:";
    for (Eigen::Index i = 0; i < diag.rhs.size(); ++i) {
      std::cout << " " << lk::format_double(diag.rhs(i));
    }
    std::cout << "\n";
    return 3;
  }
  return 0;
}

struct BenchArgs {
  std::string data_path;
  double lambda = 0.0;
  std::vector<std::string> algos;
  int iters = 1000;
  std::string out_path;
  bool check_bounds = false;
  double step_scale = 1.0;
  double alpha = 200.0;
};

int run_bench(const BenchArgs& args) {
  const lk::Dataset data = lk::read_dataset_csv(args.data_path);
  const lk::LassoProblem problem(data.x, data.y, args.lambda);
  lk::SolverConfig cfg;
  cfg.max_iters = args.iters;
  cfg.gap_tol = 0.0;  // fixed-K runs keep the bound data clean
  cfg.step_scale = args.step_scale;
  const lk::BenchResult bench = lk::bench_run(problem, args.algos, cfg, {args.alpha});

  std::ofstream out(args.out_path);
  if (!out) throw lk::Error("cannot write '" + args.out_path + "'");
  out << "algo,k,objective,gap,bound_rhs\n";
  for (const lk::SolverBenchRow& row : bench.rows) {
    std::size_t bound_i = 0;
    for (const lk::TraceRecord& rec : row.trace.records) {
      if (rec.k < 1) continue;
      const double gap = rec.objective - bench.oracle_objective;
      const double rhs = row.bounds.rows[bound_i++].rhs;
      out << row.algo << "," << rec.k << "," << lk::format_double(rec.objective)
          << "," << lk::format_double(gap) << "," << lk::format_double(rhs) << "\n";
    }
  }

  if (args.check_bounds) {
    bool violated = false;
    for (const lk::SolverBenchRow& row : bench.rows) {
      if (!row.bounds.holds) {
        violated = true;
        std::cout << row.algo << ": bound violated at k=" << row.bounds.violated_at
                  << " (slack " << row.bounds.min_slack << ")\n";
      }
    }
    if (violated) return 4;
    std::cout << "all bounds hold\n";
  }
  return 0;
}

struct GenArgs {
  std::string preset = "random";
  Eigen::Index n = 0;
  Eigen::Index p = 0;
  Eigen::Index sparsity = -1;
  double sigma = 0.5;
  double coef_min = 1.0;
  double coef_max = 2.0;
  bool standardize = false;
  std::uint64_t seed = 1;
  std::string out_path;
};

int run_gen(const GenArgs& args) {
  lk::Dataset data;
  lk::Vector beta_star;
  if (args.preset == "random") {
    lk::GenSpec spec;
    spec.n = args.n;
    spec.p = args.p;
    spec.sparsity = args.sparsity >= 0 ? args.sparsity : std::min<Eigen::Index>(args.p, 5);
    spec.sigma = args.sigma;
    spec.coef_min = args.coef_min;
    spec.coef_max = args.coef_max;
    spec.seed = args.seed;
    spec.standardize = args.standardize;
    lk::GenResult gen = lk::gen_linear(spec);
    data.x = std::move(gen.x);
    data.y = std::move(gen.y);
    beta_star = std::move(gen.beta_star);
  } else if (args.preset == "counterexample") {
    const std::vector<double> alphas = lk::seeded_alphas(args.seed, args.p);
    lk::CounterExample ce =
        lk::build_counter_example(args.p, args.n, alphas, {200.0, 100.0, 1.0}, args.seed);
    data.x = std::move(ce.x);
    data.y = std::move(ce.y);
    beta_star = std::move(ce.beta_star);
  } else {
    std::cerr << "error: unknown preset '" << args.preset << "'\n";
    return 1;
  }

  data.feature_names.resize(static_cast<std::size_t>(data.x.cols()));
  for (std::size_t j = 0; j < data.feature_names.size(); ++j) {
    data.feature_names[j] = "x" + std::to_string(j + 1);
  }
  lk::write_dataset_csv(args.out_path, data);

  std::ofstream truth(args.out_path + ".truth.csv");
  if (!truth) throw lk::Error("cannot write truth sidecar");
  truth << "feature,beta_star,in_support\n";
  for (Eigen::Index j = 0; j < beta_star.size(); ++j) {
    truth << data.feature_names[static_cast<std::size_t>(j)] << ","
          << lk::format_double(beta_star(j)) << "," << (beta_star(j) != 0.0 ? 1 : 0)
          << "\n";
  }
  return 0;
}

struct ReproArgs {
  std::string figure;
  std::string out_path;
};

int run_repro(const ReproArgs& args) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!args.out_path.empty()) {
    file.open(args.out_path);
    if (!file) throw lk::Error("cannot write '" + args.out_path + "'");
    out = &file;
  }

  if (args.figure == "surrogate") {
    *out << "x,abs,phi_alpha_1,phi_alpha_5,phi_alpha_20\n";
    for (int i = -300; i <= 300; ++i) {
      const double x = i / 100.0;
      *out << lk::format_double(x) << "," << lk::format_double(std::abs(x));
      for (const double alpha : {1.0, 5.0, 20.0}) {
        *out << "," << lk::format_double(lk::surrogate_phi(x, {alpha}));
      }
      *out << "\n";
    }
    return 0;
  }

  if (args.figure == "convergence") {
    const lk::GenResult gen = lk::gen_linear(lk::standard_bench_spec());
    lk::LassoProblem problem(gen.x, gen.y, 0.0);
    const double lambda = 0.1 * lk::lambda_max(problem);
    const lk::LassoProblem bench_problem(gen.x, gen.y, lambda);
    lk::SolverConfig cfg;
    cfg.max_iters = 1000;
    const lk::BenchResult bench =
        lk::bench_run(bench_problem, {"ista", "fista", "cgda", "sla"}, cfg, {200.0});
    *out << "algo,k,objective,gap,bound_rhs\n";
    for (const lk::SolverBenchRow& row : bench.rows) {
      std::size_t bound_i = 0;
      for (const lk::TraceRecord& rec : row.trace.records) {
        if (rec.k < 1) continue;
        const double gap = rec.objective - bench.oracle_objective;
        *out << row.algo << "," << rec.k << "," << lk::format_double(rec.objective)
             << "," << lk::format_double(gap) << ","
             << lk::format_double(row.bounds.rows[bound_i++].rhs) << "\n";
      }
    }
    return 0;
  }

  if (args.figure == "counterexample") {
    const lk::CounterExampleReport report = lk::reproduce_counter_example(42, 10);
    *out << "field,values\n";
    *out << "lambda_max," << lk::format_double(report.lambda_max) << "\n";
    for (std::size_t i = 0; i < report.loop_supports.size(); ++i) {
      *out << "loop" << i + 1 << "_support,"
           << join_support_1based(report.loop_supports[i].indices) << "\n";
    }
    *out << "fail_loop," << report.fail_loop << "\n";
    *out << "rhs";
    for (Eigen::Index i = 0; i < report.rhs.size(); ++i) {
      *out << "," << lk::format_double(report.rhs(i));
    }
    *out << "\n";
    *out << "status,"
         << (report.status == lk::PathStatus::kFailedInsertion ? "failed_insertion"
                                                               : "completed")
         << "\n";
    *out << "oracle_support," << join_support_1based(report.oracle_support) << "\n";
    return 0;
  }

  std::cerr << "error: unknown figure '" << args.figure << "'\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lassokit: l1-regularized least squares solvers, paths, and bound checks"};
  app.require_subcommand(1);

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "fit a dataset at one lambda");
  fit->add_option("--data", fit_args.data_path, "dataset CSV (response column 'y')")
      ->required();
  fit->add_option("--lambda", fit_args.lambda, "penalty level")->required();
  fit->add_option("--algo", fit_args.algo, "ista|fista|cgda|sla|pfa|lars")->required();
  auto* alpha_opt = fit->add_option("--alpha", fit_args.alpha, "surrogate sharpness (sla)");
  fit->add_option("--max-iters", fit_args.max_iters, "iteration cap");
  fit->add_option("--tol", fit_args.tol, "KKT residual stop");
  fit->add_option("--trace", fit_args.trace_path, "write per-iteration trace CSV");

  PathArgs path_args;
  auto* path = app.add_subcommand("path", "trace the regularization path");
  path->add_option("--data", path_args.data_path, "dataset CSV")->required();
  path->add_option("--min-lambda", path_args.min_lambda, "stop above this lambda");
  path->add_option("--mode", path_args.mode, "full|insertion-only")
      ->check(CLI::IsMember({"full", "insertion-only"}));
  path->add_option("--out", path_args.out_path, "segment table CSV")->required();

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "run solvers against one oracle");
  bench->add_option("--data", bench_args.data_path, "dataset CSV")->required();
  bench->add_option("--lambda", bench_args.lambda, "penalty level")->required();
  bench->add_option("--algos", bench_args.algos, "solvers to run")
      ->required()
      ->delimiter(',');
  bench->add_option("--iters", bench_args.iters, "fixed iteration count");
  bench->add_option("--out", bench_args.out_path, "trace table CSV")->required();
  bench->add_flag("--check-bounds", bench_args.check_bounds,
                  "exit 4 if any rate bound is violated");
  bench->add_option("--step-scale", bench_args.step_scale,
                    "scale the 1/L step (values > 1 break the guarantees)");
  bench->add_option("--alpha", bench_args.alpha, "surrogate sharpness for sla");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  gen->add_option("--preset", gen_args.preset, "random|counterexample")
      ->check(CLI::IsMember({"random", "counterexample"}));
  gen->add_option("--n", gen_args.n, "observations")->required();
  gen->add_option("--p", gen_args.p, "predictors")->required();
  gen->add_option("--sparsity", gen_args.sparsity, "nonzeros in beta*");
  gen->add_option("--sigma", gen_args.sigma, "noise level");
  gen->add_option("--coef-min", gen_args.coef_min, "smallest |beta*| magnitude");
  gen->add_option("--coef-max", gen_args.coef_max, "largest |beta*| magnitude");
  gen->add_flag("--standardize", gen_args.standardize, "unit-norm columns");
  gen->add_option("--seed", gen_args.seed, "RNG seed")->required();
  gen->add_option("--out", gen_args.out_path, "dataset CSV path")->required();

  ReproArgs repro_args;
  auto* repro = app.add_subcommand("repro", "emit figure/diagnostic data");
  repro->add_option("--paper-figure", repro_args.figure,
                    "surrogate|convergence|counterexample")
      ->required();
  repro->add_option("--out", repro_args.out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  fit_args.alpha_set = alpha_opt->count() > 0;

  try {
    if (fit->parsed()) return run_fit(fit_args);
    if (path->parsed()) return run_path(path_args);
    if (bench->parsed()) return run_bench(bench_args);
    if (gen->parsed()) return run_gen(gen_args);
    if (repro->parsed()) return run_repro(repro_args);
  } catch (const lassokit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
