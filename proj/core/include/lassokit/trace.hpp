#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lassokit/linalg.hpp"

namespace lassokit {

struct TraceRecord {
  int k = 0;
  Vector beta;
  double objective = 0.0;
  double residual = 0.0;  // KKT residual for Lasso solvers, grad norm for GD
  std::int64_t elapsed_ns = 0;
};

/// Per-iteration record of a solver run. `surrogate_objective` is filled
/// only by SLA (F_alpha alongside F); it is aligned with `records`.
struct IterateTrace {
  std::string algorithm;
  std::vector<TraceRecord> records;
  std::vector<double> surrogate_objective;
  bool converged = false;
  int iterations = 0;

  const TraceRecord& last() const { return records.back(); }
};

}  // namespace lassokit
