#include "lassokit/pathwise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lassokit/datagen.hpp"
#include "lassokit/errors.hpp"
#include "lassokit/verify.hpp"

namespace lassokit {

double lambda_max(const LassoProblem& problem) {
  return problem.xty().cwiseAbs().maxCoeff() / static_cast<double>(problem.n());
}

namespace {

std::string support_label(const std::vector<int>& idx) {
  std::ostringstream os;
  os << "path support {";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) os << ",";
    os << idx[i] + 1;
  }
  os << "}";
  return os.str();
}

struct SegmentLaw {
  Vector intercept;  // a: beta_S(lambda) = a + lambda * b
  Vector slope;      // b
};

SegmentLaw segment_law(const LassoProblem& pb, const std::vector<int>& idx,
                       const std::vector<int>& signs) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  Matrix g(k, k);
  Vector qs(k), s(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    qs(i) = pb.xty()(idx[i]);
    s(i) = signs[i];
    for (Eigen::Index j = 0; j < k; ++j) g(i, j) = pb.gram()(idx[i], idx[j]);
  }
  const Matrix lower = cholesky_factor(g, support_label(idx));
  SegmentLaw law;
  law.intercept = cholesky_solve(lower, qs);
  law.slope = -static_cast<double>(pb.n()) * cholesky_solve(lower, s);
  return law;
}

// Correlation of an inactive coordinate with the segment residual is affine
// in lambda: c_j(lambda) = u_j + w_j * lambda.
void partial_correlation(const LassoProblem& pb, const std::vector<int>& idx,
                         const SegmentLaw& law, int j, double* u, double* w) {
  double dot_a = 0.0, dot_b = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    dot_a += pb.gram()(j, idx[i]) * law.intercept(static_cast<Eigen::Index>(i));
    dot_b += pb.gram()(j, idx[i]) * law.slope(static_cast<Eigen::Index>(i));
  }
  const double dn = static_cast<double>(pb.n());
  *u = (pb.xty()(j) - dot_a) / dn;
  *w = -dot_b / dn;
}

void insert_sorted(std::vector<int>& idx, std::vector<int>& signs, int j, int sign) {
  const auto pos = std::lower_bound(idx.begin(), idx.end(), j) - idx.begin();
  idx.insert(idx.begin() + pos, j);
  signs.insert(signs.begin() + pos, sign);
}

PathSegment make_segment(double hi, double lo, const std::vector<int>& idx,
                         const std::vector<int>& signs, const SegmentLaw& law) {
  PathSegment seg;
  seg.lambda_hi = hi;
  seg.lambda_lo = lo;
  seg.support.indices = idx;
  seg.support.signs = signs;
  seg.intercept = law.intercept;
  seg.slope = law.slope;
  return seg;
}

RegPath trivial_path(const LassoProblem& pb, double target) {
  RegPath path;
  path.p = pb.p();
  path.lambda_max = 0.0;
  path.lambda_min = target;
  path.kinks = {target};
  return path;
}

RegPath solve_path_full(const LassoProblem& pb, double target) {
  const auto p = pb.p();
  const double lam_top = lambda_max(pb);
  RegPath path;
  path.p = p;
  path.lambda_max = lam_top;
  path.lambda_min = target;
  path.kinks.push_back(lam_top);

  Eigen::Index j0;
  pb.xty().cwiseAbs().maxCoeff(&j0);
  std::vector<int> idx{static_cast<int>(j0)};
  std::vector<int> signs{pb.xty()(j0) >= 0 ? 1 : -1};
  std::vector<bool> active(p, false);
  active[static_cast<std::size_t>(j0)] = true;

  const long cap = 10L * p * std::max<long>(1, pb.n());
  double lam_hi = lam_top;
  while (true) {
    if (static_cast<long>(path.segments.size()) > cap) {
      throw ConvergenceError("solve_path: segment cap exceeded");
    }
    const SegmentLaw law = segment_law(pb, idx, signs);
    const double window = lam_hi * (1.0 - 1e-12);
    const double tie_tol = 1e-12 * std::max(1.0, lam_hi);

    double best = -1.0;
    int best_index = -1;
    bool best_is_insertion = true;
    int best_sign = 0;
    auto consider = [&](double lam, int j, bool insertion, int sign) {
      if (!std::isfinite(lam) || lam <= target || lam >= window) return;
      if (lam > best + tie_tol) {
        best = lam;
        best_index = j;
        best_is_insertion = insertion;
        best_sign = sign;
      } else if (lam > best - tie_tol && j < best_index) {
        std::ostringstream os;
        os << "tie at lambda=" << lam << " broken toward index " << j + 1;
        path.notes.push_back(os.str());
        best_index = j;
        best_is_insertion = insertion;
        best_sign = sign;
      }
    };

    for (int j = 0; j < p; ++j) {
      if (active[static_cast<std::size_t>(j)]) continue;
      double u, w;
      partial_correlation(pb, idx, law, j, &u, &w);
      if (std::abs(1.0 - w) > 1e-14) consider(u / (1.0 - w), j, true, 1);
      if (std::abs(1.0 + w) > 1e-14) consider(-u / (1.0 + w), j, true, -1);
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const double b = law.slope(static_cast<Eigen::Index>(i));
      if (std::abs(b) < 1e-14) continue;
      consider(-law.intercept(static_cast<Eigen::Index>(i)) / b, idx[i], false, 0);
    }

    if (best_index < 0) {
      path.segments.push_back(make_segment(lam_hi, target, idx, signs, law));
      path.kinks.push_back(target);
      break;
    }
    path.segments.push_back(make_segment(lam_hi, best, idx, signs, law));
    path.kinks.push_back(best);
    if (best_is_insertion) {
      insert_sorted(idx, signs, best_index, best_sign);
      active[static_cast<std::size_t>(best_index)] = true;
    } else {
      const auto pos = std::lower_bound(idx.begin(), idx.end(), best_index) - idx.begin();
      idx.erase(idx.begin() + pos);
      signs.erase(signs.begin() + pos);
      active[static_cast<std::size_t>(best_index)] = false;
      if (idx.empty()) {
        // support hit empty above target; the remaining stretch is all-zero
        break;
      }
    }
    lam_hi = best;
  }
  path.status = PathStatus::kCompleted;
  return path;
}

RegPath solve_path_insertion_only(const LassoProblem& pb, double target) {
  const auto p = pb.p();
  const double lam_top = lambda_max(pb);
  RegPath path;
  path.p = p;
  path.lambda_max = lam_top;
  path.lambda_min = target;
  path.kinks.push_back(lam_top);

  Eigen::Index j0;
  pb.xty().cwiseAbs().maxCoeff(&j0);
  std::vector<int> idx{static_cast<int>(j0)};
  std::vector<int> signs{pb.xty()(j0) >= 0 ? 1 : -1};

  const double signal_tol = 1e-12 * std::max(1.0, lam_top);
  double lam_hi = lam_top;
  while (true) {
    const SegmentLaw law = segment_law(pb, idx, signs);
    if (static_cast<Eigen::Index>(idx.size()) == p) {
      path.segments.push_back(make_segment(lam_hi, target, idx, signs, law));
      path.kinks.push_back(target);
      break;
    }

    // next candidate: the coordinate most correlated with the current
    // restricted least-squares residual
    std::vector<int> inactive;
    Vector u_all(p - static_cast<Eigen::Index>(idx.size()));
    Vector w_all(u_all.size());
    int pick = -1;
    double pick_u = 0.0, pick_w = 0.0, best_abs = -1.0;
    Eigen::Index slot = 0;
    for (int j = 0; j < p; ++j) {
      if (std::binary_search(idx.begin(), idx.end(), j)) continue;
      double u, w;
      partial_correlation(pb, idx, law, j, &u, &w);
      inactive.push_back(j);
      u_all(slot) = u;
      w_all(slot) = w;
      ++slot;
      if (std::abs(u) > best_abs) {
        best_abs = std::abs(u);
        pick = j;
        pick_u = u;
        pick_w = w;
      }
    }

    if (best_abs <= signal_tol) {
      path.segments.push_back(make_segment(lam_hi, target, idx, signs, law));
      path.kinks.push_back(target);
      break;
    }

    const double window = lam_hi * (1.0 - 1e-12);
    double best = -1.0;
    int best_sign = 0;
    if (std::abs(1.0 - pick_w) > 1e-14) {
      const double lam = pick_u / (1.0 - pick_w);
      if (std::isfinite(lam) && lam > target && lam < window && lam > best) {
        best = lam;
        best_sign = 1;
      }
    }
    if (std::abs(1.0 + pick_w) > 1e-14) {
      const double lam = -pick_u / (1.0 + pick_w);
      if (std::isfinite(lam) && lam > target && lam < window && lam > best) {
        best = lam;
        best_sign = -1;
      }
    }

    if (best < 0.0) {
      PathDiagnostic diag;
      diag.loop = static_cast<int>(idx.size()) + 1;
      diag.support.indices = idx;
      diag.support.signs = signs;
      diag.inactive = inactive;
      diag.rhs = w_all;
      diag.residual = u_all;
      std::ostringstream os;
      os << "loop " << diag.loop << ": no single-insertion kink exists for coordinate "
         << pick + 1 << " (sign equation requires |subgradient| = " << std::abs(pick_w)
         << " with residual correlation " << pick_u << ")";
      diag.message = os.str();
      path.diagnostic = std::move(diag);
      path.status = PathStatus::kFailedInsertion;
      return path;
    }

    path.segments.push_back(make_segment(lam_hi, best, idx, signs, law));
    path.kinks.push_back(best);
    insert_sorted(idx, signs, pick, best_sign);
    lam_hi = best;
  }
  path.status = PathStatus::kCompleted;
  return path;
}

}  // namespace

RegPath solve_path(const LassoProblem& problem, PathMode mode, double target_lambda) {
  if (target_lambda < 0) {
    throw DimensionError("solve_path: target lambda must be nonnegative");
  }
  if (lambda_max(problem) <= target_lambda) {
    return trivial_path(problem, target_lambda);
  }
  return mode == PathMode::kFull ? solve_path_full(problem, target_lambda)
                                 : solve_path_insertion_only(problem, target_lambda);
}

Vector eval_path_at(const RegPath& path, double lam) {
  const double tol = 1e-12 * std::max(1.0, path.lambda_max);
  if (lam > path.lambda_max + tol) {
    throw Error("eval_path_at: lambda above the path range");
  }
  if (path.segments.empty()) {
    if (lam < path.lambda_min - tol) {
      throw Error("eval_path_at: lambda below the path range");
    }
    return Vector::Zero(path.p);
  }
  const double covered = path.segments.back().lambda_lo;
  if (lam < covered - tol) {
    throw Error("eval_path_at: lambda below the covered path range");
  }
  const double clamped = std::clamp(lam, covered, path.lambda_max);
  for (const PathSegment& seg : path.segments) {
    if (clamped >= seg.lambda_lo) {
      Vector beta = Vector::Zero(path.p);
      for (std::size_t i = 0; i < seg.support.indices.size(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        beta(seg.support.indices[i]) = seg.intercept(ii) + clamped * seg.slope(ii);
      }
      return beta;
    }
  }
  // unreachable given the ordering invariant
  throw Error("eval_path_at: no containing segment");
}

CounterExample build_counter_example(Eigen::Index p, Eigen::Index n,
                                     const std::vector<double>& alphas,
                                     const std::array<double, 3>& betas,
                                     std::uint64_t basis_seed) {
  if (p < 4) throw DimensionError("build_counter_example: p must be >= 4");
  if (n < p) throw DimensionError("build_counter_example: n must be >= p");
  if (static_cast<Eigen::Index>(alphas.size()) != p - 2) {
    throw DimensionError("build_counter_example: need p-2 alphas");
  }
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) {
      throw DimensionError("build_counter_example: alphas must lie in (0,1)");
    }
  }
  if (!(betas[0] > betas[1] && betas[1] > betas[2] && betas[2] > 0)) {
    throw DimensionError("build_counter_example: need beta1 > beta2 > beta3 > 0");
  }

  Rng rng(basis_seed);
  Matrix m(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) m(i, j) = rng.normal();
  }
  const Eigen::HouseholderQR<Matrix> qr(m);
  const Matrix basis = qr.householderQ() * Matrix::Identity(n, p);

  CounterExample ce;
  ce.x.resize(n, p);
  ce.x.col(0) = basis.col(0);
  ce.x.col(1) = basis.col(1);
  for (Eigen::Index j = 2; j < p; ++j) {
    const double a = alphas[static_cast<std::size_t>(j - 2)];
    const double c = std::sqrt(1.0 - a * a - (1.0 - a) * (1.0 - a));
    ce.x.col(j) = a * ce.x.col(0) + (1.0 - a) * ce.x.col(1) + c * basis.col(j);
  }
  ce.y = betas[0] * ce.x.col(0) + betas[1] * ce.x.col(1) + betas[2] * ce.x.col(2);
  ce.beta_star = Vector::Zero(p);
  ce.beta_star(0) = betas[0];
  ce.beta_star(1) = betas[1];
  ce.beta_star(2) = betas[2];
  ce.true_support = {0, 1, 2};
  return ce;
}

std::vector<double> seeded_alphas(std::uint64_t seed, Eigen::Index p) {
  if (p < 4) throw DimensionError("seeded_alphas: p must be >= 4");
  Rng rng(seed);
  std::vector<double> alphas(static_cast<std::size_t>(p - 2));
  for (double& a : alphas) a = rng.uniform(0.15, 0.85);
  return alphas;
}

CounterExampleReport reproduce_counter_example(std::uint64_t seed, Eigen::Index p) {
  if (p < 4) throw DimensionError("reproduce_counter_example: p must be >= 4");
  const Eigen::Index n = 2 * p;
  const std::vector<double> alphas = seeded_alphas(seed, p);

  CounterExample ce = build_counter_example(p, n, alphas, {200.0, 100.0, 1.0}, seed);
  const LassoProblem pathing(ce.x, ce.y, 0.0);

  CounterExampleReport report;
  report.seed = seed;
  report.p = p;
  report.n = n;
  report.lambda_max = lambda_max(pathing);
  report.path = solve_path(pathing, PathMode::kInsertionOnly, 0.0);
  report.status = report.path.status;
  for (const PathSegment& seg : report.path.segments) {
    report.loop_supports.push_back(seg.support);
  }
  if (report.path.diagnostic) {
    const PathDiagnostic& diag = *report.path.diagnostic;
    report.loop_supports.push_back(diag.support);
    report.fail_loop = diag.loop;
    report.rhs_indices = diag.inactive;
    report.rhs = diag.rhs;
  }

  const LassoProblem small(ce.x, ce.y, 1e-4 * report.lambda_max);
  const Vector beta_hat = oracle_solve(small, 1e-10);
  for (Eigen::Index j = 0; j < p; ++j) {
    if (std::abs(beta_hat(j)) > 1e-6) report.oracle_support.push_back(static_cast<int>(j));
  }
  return report;
}

LarsTrace solve_lars(const Matrix& x, const Vector& y) {
  const auto n = x.rows();
  const auto p = x.cols();
  if (n != y.size()) {
    throw DimensionError("solve_lars: X rows != y length");
  }
  for (Eigen::Index j = 0; j < p; ++j) {
    if (std::abs(x.col(j).norm() - 1.0) > 1e-6) {
      std::ostringstream os;
      os << "solve_lars: column " << j + 1 << " is not unit norm; standardize predictors";
      throw DimensionError(os.str());
    }
  }

  LarsTrace trace;
  Vector c = x.transpose() * y;
  Vector beta = Vector::Zero(p);
  std::vector<int> active;
  std::vector<bool> is_active(static_cast<std::size_t>(p), false);
  const double corr_scale = std::max(1.0, c.cwiseAbs().maxCoeff());

  while (static_cast<Eigen::Index>(active.size()) < p) {
    // entering variable: most correlated with the current residual
    int enter = -1, runner = -1;
    double cmax = -1.0, second = -1.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (is_active[static_cast<std::size_t>(j)]) continue;
      const double a = std::abs(c(j));
      if (a > cmax) {
        second = cmax;
        runner = enter;
        cmax = a;
        enter = static_cast<int>(j);
      } else if (a > second) {
        second = a;
        runner = static_cast<int>(j);
      }
    }
    if (cmax <= 1e-12 * corr_scale) break;  // residual uncorrelated with the rest
    if (runner >= 0 && cmax - second <= 1e-12 * corr_scale) {
      std::ostringstream os;
      os << "solve_lars: tie in entering correlations between columns " << enter + 1
         << " and " << runner + 1;
      throw TieError(os.str());
    }
    active.push_back(enter);
    is_active[static_cast<std::size_t>(enter)] = true;
    std::sort(active.begin(), active.end());

    const auto k = static_cast<Eigen::Index>(active.size());
    Matrix g(k, k);
    Vector s(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      s(i) = c(active[static_cast<std::size_t>(i)]) >= 0 ? 1.0 : -1.0;
      for (Eigen::Index l = 0; l < k; ++l) {
        g(i, l) = x.col(active[static_cast<std::size_t>(i)])
                      .dot(x.col(active[static_cast<std::size_t>(l)]));
      }
    }
    const Matrix lower = cholesky_factor(g, support_label(active));
    const Vector ginv_s = cholesky_solve(lower, s);
    const double norm_const = 1.0 / std::sqrt(s.dot(ginv_s));
    const Vector direction = norm_const * ginv_s;  // coefficient-space move

    Vector unit = Vector::Zero(n);  // the equiangular vector in response space
    for (Eigen::Index i = 0; i < k; ++i) {
      unit += direction(i) * x.col(active[static_cast<std::size_t>(i)]);
    }
    const Vector a_corr = x.transpose() * unit;

    const double full_step = cmax / norm_const;  // lands on the joint LS fit
    double gamma = full_step;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (is_active[static_cast<std::size_t>(j)]) continue;
      for (const double cand : {(cmax - c(j)) / (norm_const - a_corr(j)),
                                (cmax + c(j)) / (norm_const + a_corr(j))}) {
        if (std::isfinite(cand) && cand > 1e-14 * corr_scale && cand < gamma) {
          gamma = cand;
        }
      }
    }

    for (Eigen::Index i = 0; i < k; ++i) {
      beta(active[static_cast<std::size_t>(i)]) += gamma * direction(i);
    }
    c -= gamma * a_corr;
    trace.steps.push_back({enter, cmax, beta});
  }
  trace.beta = beta;
  return trace;
}

}  // namespace lassokit
