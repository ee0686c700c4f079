#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "quantlab/cli.hpp"
#include "quantlab/errors.hpp"

using namespace quantlab;
using namespace quantlab::cli;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "quantlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str() + err.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("quantlab_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("sigma parsing") {
  CHECK(parse_sigma("i").sigma() == cplx(0.0, 1.0));
  CHECK(parse_sigma("2i").sigma() == cplx(0.0, 2.0));
  CHECK(parse_sigma("1+i").sigma() == cplx(1.0, 1.0));
  CHECK(parse_sigma("0.3+0.7i").sigma() == cplx(0.3, 0.7));
  CHECK(parse_sigma("-0.5+1.5i").sigma() == cplx(-0.5, 1.5));
  CHECK(parse_sigma("0.2,1.1").sigma() == cplx(0.2, 1.1));
  CHECK_THROWS_AS(parse_sigma("1-i"), DomainError);
  CHECK_THROWS(parse_sigma("banana"));
}

TEST_CASE("symbol parsing") {
  CHECK(max_diff(parse_symbol("cos_x"), TrigPoly::cos_x()) == 0.0);
  CHECK(max_diff(parse_symbol("cos_x*cos_y + 0.5*e:1,-1"),
                 TrigPoly::cos_x() * TrigPoly::cos_y() + 0.5 * TrigPoly::mode(1, -1)) < 1e-15);
  CHECK(max_diff(parse_symbol("sin_y:2"), TrigPoly::sin_y(2)) == 0.0);
  CHECK_THROWS(parse_symbol("tan_x"));
}

TEST_CASE("exit codes") {
  CHECK(run({"--help"}) == 0);
  CHECK(run({"frobnicate"}) == 2);
  CHECK(run({"smatrix", "--bogus"}) == 2);
  CHECK(run({"smatrix", "--n", "1", "--out", scratch("bad_n").string()}) == 2);
  CHECK(run({"theta", "--sigma", "0.3-0.2i", "--out", scratch("bad_sigma").string()}) == 2);
}

TEST_CASE("smatrix report and CSV") {
  const fs::path out = scratch("smatrix");
  std::string log;
  REQUIRE(run({"smatrix", "--n", "2", "--k", "1", "--format", "csv", "--out", out.string()}, &log) == 0);
  CHECK(log.find("PASS") != std::string::npos);
  CHECK(fs::exists(out / "report.json"));
  CHECK(fs::exists(out / "manifest.json"));
  const auto report = report::json::parse(slurp(out / "report.json"));
  CHECK(report["pass"] == true);
  CHECK(report["command"] == "smatrix");
  bool found_csv = false;
  for (const auto& e : fs::directory_iterator(out))
    if (e.path().extension() == ".csv") found_csv = true;
  CHECK(found_csv);
}

TEST_CASE("reports are deterministic for a fixed seed") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  REQUIRE(run({"identities", "--k", "3", "--seed", "7", "--out", a.string()}) == 0);
  REQUIRE(run({"identities", "--k", "3", "--seed", "7", "--out", b.string()}) == 0);
  CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
}

TEST_CASE("config file with flag override") {
  const fs::path out = scratch("config");
  fs::create_directories(out);
  const fs::path cfg = out / "run.ini";
  std::ofstream(cfg) << "n = 3\nk = 2\n";
  REQUIRE(run({"smatrix", "--config", cfg.string(), "--k", "3", "--out", out.string()}) == 0);
  const auto manifest = report::json::parse(slurp(out / "manifest.json"));
  CHECK(manifest["config"]["n"] == 3);
  CHECK(manifest["config"]["k"] == 3);
}

TEST_CASE("report helpers") {
  CHECK(report::format_double(0.1) == "0.1");
  CHECK(std::stod(report::format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK_FALSE(report::make_check("x", report::json::object(), std::nan(""), 1.0).pass);
  CHECK(report::make_check("x", report::json::object(), 0.5, 1.0).pass);
}
