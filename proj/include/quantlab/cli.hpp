#pragma once

// Command-line front end: run configuration, the verification suites behind
// each subcommand, the acceptance criteria and report-directory output.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quantlab/report.hpp"
#include "quantlab/torus_model.hpp"
#include "quantlab/trig_poly.hpp"

namespace quantlab::cli {

struct RunConfig {
  std::string command;
  int n = 2;
  int k = 4;
  std::vector<int> k_list;  // empty: the subcommand default
  std::string sigma = "i";
  std::string to;           // transport end point; empty: sigma + 0.2 + 0.1i
  double side = 0.2;        // loop-defect square side
  int N = 0;                // grid size; 0: 16k
  std::map<std::string, double> tolerances;
  std::string out = "quantlab-report";
  std::string format = "json";
  std::uint64_t seed = 7;
  std::string label = "1";
  int genus = 0;
  std::vector<std::string> boundary;
  std::string f = "cos_x";
  std::string g = "cos_y";

  /// Named tolerance override, or the fallback.
  double tol(const std::string& name, double fallback) const;
  /// Throws DomainError on an invalid combination.
  void validate() const;
};

/// "i", "1+i", "0.3+0.7i", "2i" or "s1,s2".
torus::TeichPoint parse_sigma(const std::string& text);
/// Sum of products of cos_x, sin_y, ..., cos_x:2 (second harmonic), e:m,n and
/// numeric factors, e.g. "cos_x*cos_y + 0.5*e:1,-1".
TrigPoly parse_symbol(const std::string& text);

struct SuiteResult {
  std::vector<report::Check> checks;
  report::json data = report::json::object();
  /// File stem and table, written as CSV or embedded in the JSON report.
  std::vector<std::pair<std::string, report::Table>> tables;

  void merge(SuiteResult other, const std::string& prefix = "");
  bool pass() const { return report::all_pass(checks); }
};

using Suite = std::function<SuiteResult(const RunConfig&)>;

/// Subcommand name to suite, in the order they are listed in the usage text.
const std::vector<std::pair<std::string, Suite>>& suites();
SuiteResult run_suite(const RunConfig& config);

struct Criterion {
  int id;
  std::string name;
  std::function<SuiteResult(std::uint64_t seed)> run;
};

/// The twelve acceptance criteria at their fixed parameter ranges.
const std::vector<Criterion>& criteria();

/// Runs the configured suite, writes report.json, data files and manifest.json
/// into config.out and returns 0 (all checks pass) or 1.
int dispatch(const RunConfig& config, std::ostream& log);

/// Parses flags and an optional `key = value` config file; returns the exit
/// code, 2 for configuration errors.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace quantlab::cli
