#include "lassokit/dataset.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lassokit/errors.hpp"

namespace lassokit {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_cell(const std::string& cell, int line_no) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  while (end && *end == ' ') ++end;
  if (end == begin || (end && *end != '\0')) {
    std::ostringstream os;
    os << "bad numeric cell '" << cell << "' at line " << line_no;
    throw ParseError(os.str(), line_no);
  }
  return v;
}

}  // namespace

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path + "'", 0);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("empty file at line 1", 1);
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const std::vector<std::string> header = split_line(line);
  int y_col = -1;
  Dataset data;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "y") {
      if (y_col >= 0) throw ParseError("duplicate 'y' column at line 1", 1);
      y_col = static_cast<int>(c);
    } else {
      data.feature_names.push_back(header[c]);
    }
  }
  if (y_col < 0) {
    throw ParseError("no column named 'y' in header at line 1", 1);
  }
  if (data.feature_names.empty()) {
    throw ParseError("need at least one predictor column at line 1", 1);
  }

  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != header.size()) {
      std::ostringstream os;
      os << "expected " << header.size() << " cells but found " << cells.size()
         << " at line " << line_no;
      throw ParseError(os.str(), line_no);
    }
    std::vector<double> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      row[c] = parse_cell(cells[c], line_no);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw ParseError("no data rows after the header", line_no + 1);
  }

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto p = static_cast<Eigen::Index>(data.feature_names.size());
  data.x.resize(n, p);
  data.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index col = 0;
    for (std::size_t c = 0; c < rows[static_cast<std::size_t>(i)].size(); ++c) {
      const double v = rows[static_cast<std::size_t>(i)][c];
      if (static_cast<int>(c) == y_col) {
        data.y(i) = v;
      } else {
        data.x(i, col++) = v;
      }
    }
  }
  return data;
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write '" + path + "'");
  }
  for (const std::string& name : data.feature_names) out << name << ",";
  out << "y\n";
  for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.x.cols(); ++j) {
      out << format_double(data.x(i, j)) << ",";
    }
    out << format_double(data.y(i)) << "\n";
  }
}

}  // namespace lassokit
