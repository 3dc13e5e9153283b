#pragma once

#include <cstdint>
#include <random>

#include "lassokit/linalg.hpp"

namespace lassokit {

/// Deterministic random stream. All randomness in the library flows through
/// this wrapper so fixtures stay portable: the generator is std::mt19937_64
/// (bit-exact per the standard), uniforms take the top 53 bits of one draw,
/// and normals use the Box-Muller cosine branch, consuming exactly two
/// draws each. No implementation-defined distributions are involved.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on (0, 1]: ((draw >> 11) + 1) * 2^-53.
  double uniform01() {
    return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// N(0,1) via z = sqrt(-2 ln u1) * cos(2 pi u2).
  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793238462643 * u2);
  }

  /// Uniform integer in [0, bound) by modulo reduction (bias is irrelevant
  /// here; determinism is what matters).
  std::uint64_t below(std::uint64_t bound) { return gen_() % bound; }

 private:
  std::mt19937_64 gen_;
};

struct GenSpec {
  Eigen::Index n = 50;
  Eigen::Index p = 20;
  Eigen::Index sparsity = 5;
  double sigma = 0.5;
  double coef_min = 1.0;
  double coef_max = 2.0;
  std::uint64_t seed = 1;
  bool standardize = false;
};

struct GenResult {
  Matrix x;
  Vector y;
  Vector beta_star;
};

/// y = X beta* + sigma w with X and w standard normal and beta* carrying
/// `sparsity` nonzeros at seeded positions, magnitudes uniform in
/// [coef_min, coef_max] with random signs. Draw order: X row-major, then
/// support indices (partial Fisher-Yates), then magnitudes+signs, then w.
/// With standardize set, columns of X are scaled to unit norm before
/// beta*/y are formed.
GenResult gen_linear(const GenSpec& spec);

/// The fixed instance behind benchmark plots and regression baselines:
/// n = 100, p = 50, s = 10, sigma = 0.5, seed 7.
GenSpec standard_bench_spec();

}  // namespace lassokit
