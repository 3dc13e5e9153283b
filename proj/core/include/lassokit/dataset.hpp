#pragma once

#include <string>
#include <vector>

#include "lassokit/linalg.hpp"

namespace lassokit {

/// Tabular dataset backing the CLI: CSV with a header row, the column
/// literally named "y" as the response, every other column a predictor in
/// file order. Rectangular, no missing cells, at least one predictor.
struct Dataset {
  std::vector<std::string> feature_names;
  Matrix x;
  Vector y;
};

/// Parse a dataset file. Throws ParseError carrying the offending 1-based
/// line number on malformed input.
Dataset read_dataset_csv(const std::string& path);

void write_dataset_csv(const std::string& path, const Dataset& data);

/// Full round-trip precision (17 significant digits).
std::string format_double(double value);

}  // namespace lassokit
