#pragma once

// Check records, residual tables and matrix dumps in CSV and JSON.

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace quantlab::report {

using json = nlohmann::ordered_json;

struct Check {
  std::string check;
  json inputs = json::object();
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Passes when residual <= tolerance; NaN fails.
Check make_check(std::string name, json inputs, double residual, double tolerance);
/// Passes on an externally decided condition, e.g. a slope bound or a ratio window.
Check make_check(std::string name, json inputs, double residual, double tolerance, bool pass);

json to_json(const Check& c);
bool all_pass(const std::vector<Check>& checks);

/// Rectangular table with named columns; cells are numbers or strings.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  void add(std::vector<json> row);
};

void write_csv(std::ostream& out, const Table& t);
json to_json(const Table& t);

/// Long-form CSV: row label, column label, re, im.
Table matrix_table(const Eigen::MatrixXcd& m, const std::vector<std::string>& row_labels,
                   const std::vector<std::string>& col_labels);
/// {"labels", "rows", "cols", "re", "im"} with row-major flat arrays.
json matrix_json(const Eigen::MatrixXcd& m, const std::vector<std::string>& labels);

/// Shortest round-trip decimal representation.
std::string format_double(double x);

}  // namespace quantlab::report
