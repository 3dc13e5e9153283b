#include "lassokit/datagen.hpp"

#include <numeric>
#include <vector>

#include "lassokit/errors.hpp"

namespace lassokit {

GenResult gen_linear(const GenSpec& spec) {
  if (spec.n < 1 || spec.p < 1) {
    throw DimensionError("gen_linear: n and p must be positive");
  }
  if (spec.sparsity < 0 || spec.sparsity > spec.p) {
    throw DimensionError("gen_linear: sparsity must lie in [0, p]");
  }
  if (spec.sigma < 0) {
    throw DimensionError("gen_linear: sigma must be nonnegative");
  }
  if (!(spec.coef_min <= spec.coef_max) || spec.coef_min < 0) {
    throw DimensionError("gen_linear: bad coefficient range");
  }

  Rng rng(spec.seed);
  GenResult out;
  out.x.resize(spec.n, spec.p);
  for (Eigen::Index i = 0; i < spec.n; ++i) {
    for (Eigen::Index j = 0; j < spec.p; ++j) out.x(i, j) = rng.normal();
  }
  if (spec.standardize) {
    for (Eigen::Index j = 0; j < spec.p; ++j) {
      const double norm = out.x.col(j).norm();
      if (norm > 0) out.x.col(j) /= norm;
    }
  }

  std::vector<Eigen::Index> idx(spec.p);
  std::iota(idx.begin(), idx.end(), 0);
  for (Eigen::Index i = 0; i < spec.sparsity; ++i) {
    const auto j = i + static_cast<Eigen::Index>(rng.below(idx.size() - i));
    std::swap(idx[i], idx[j]);
  }

  out.beta_star = Vector::Zero(spec.p);
  for (Eigen::Index i = 0; i < spec.sparsity; ++i) {
    const double mag = rng.uniform(spec.coef_min, spec.coef_max);
    const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    out.beta_star(idx[i]) = sign * mag;
  }

  out.y = out.x * out.beta_star;
  for (Eigen::Index i = 0; i < spec.n; ++i) out.y(i) += spec.sigma * rng.normal();
  return out;
}

GenSpec standard_bench_spec() {
  GenSpec spec;
  spec.n = 100;
  spec.p = 50;
  spec.sparsity = 10;
  spec.sigma = 0.5;
  spec.seed = 7;
  return spec;
}

}  // namespace lassokit
