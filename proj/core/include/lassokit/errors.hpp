#pragma once

#include <stdexcept>
#include <string>

namespace lassokit {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Shape mismatch between operands (vector length, matrix dims, asymmetry).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An iterative routine exhausted its iteration cap without converging.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A linear system was rank deficient; the message names the offending support.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Non-finite objective or gradient encountered mid-run.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int iteration)
      : Error(what), iteration(iteration) {}
  int iteration;
};

/// Problem data admits no meaningful solve (e.g. X = 0 with lambda = 0).
class DegenerateProblemError : public Error {
 public:
  using Error::Error;
};

/// Backtracking found no acceptable step above its floor.
class LineSearchError : public Error {
 public:
  using Error::Error;
};

/// Exact tie where the algorithm requires a unique choice (LARS entry).
class TieError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; message carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(what), line(line) {}
  int line;
};

}  // namespace lassokit
