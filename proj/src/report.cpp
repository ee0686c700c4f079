#include "quantlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace quantlab::report {

namespace {

std::string csv_cell(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "nan";
  const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

Check make_check(std::string name, json inputs, double residual, double tolerance) {
  return make_check(std::move(name), std::move(inputs), residual, tolerance, residual <= tolerance);
}

Check make_check(std::string name, json inputs, double residual, double tolerance, bool pass) {
  return {std::move(name), std::move(inputs), residual, tolerance, pass && !std::isnan(residual)};
}

json to_json(const Check& c) {
  json j;
  j["check"] = c.check;
  j["inputs"] = c.inputs;
  j["residual"] = c.residual;
  j["tolerance"] = c.tolerance;
  j["pass"] = c.pass;
  return j;
}

bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void Table::add(std::vector<json> row) { rows.push_back(std::move(row)); }

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

json to_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) r[t.columns[i]] = row[i];
    rows.push_back(std::move(r));
  }
  return rows;
}

Table matrix_table(const Eigen::MatrixXcd& m, const std::vector<std::string>& row_labels,
                   const std::vector<std::string>& col_labels) {
  Table t{{"row", "col", "re", "im"}, {}};
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      t.add({row_labels.at(static_cast<std::size_t>(i)), col_labels.at(static_cast<std::size_t>(j)),
             m(i, j).real(), m(i, j).imag()});
  return t;
}

json matrix_json(const Eigen::MatrixXcd& m, const std::vector<std::string>& labels) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  json j;
  j["labels"] = labels;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  for (int p = 15; p <= 17; ++p) {
    std::snprintf(buf, sizeof buf, "%.*g", p, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

}  // namespace quantlab::report
