#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "quantlab/cli.hpp"
#include "quantlab/errors.hpp"
#include "quantlab/formal_hitchin.hpp"
#include "quantlab/hitchin.hpp"
#include "quantlab/modular_data.hpp"
#include "quantlab/toeplitz.hpp"

namespace py = pybind11;
using namespace quantlab;

namespace {

torus::TeichPoint point(cplx sigma) { return torus::TeichPoint::from_complex(sigma); }

py::dict s_matrix(int n, int k) {
  const modular::ModularData d = modular::s_matrix(n, k);
  std::vector<std::string> labels;
  for (const auto& l : d.labels) labels.push_back(l.to_string());
  py::dict out;
  out["labels"] = labels;
  out["S"] = d.S;
  return out;
}

std::vector<std::pair<cplx, std::string>> curve_spectrum(const std::string& label, int n, int k) {
  std::vector<std::pair<cplx, std::string>> out;
  for (const auto& e : modular::curve_spectrum(modular::Label::parse(label), n, k))
    out.emplace_back(e.eigenvalue, e.label.to_string());
  return out;
}

py::dict verlinde_dim(int n, int k, int genus, const std::vector<std::string>& boundary) {
  std::vector<modular::Label> labels;
  for (const auto& b : boundary) labels.push_back(modular::Label::parse(b));
  const modular::VerlindeResult r = modular::verlinde_dim(n, k, genus, labels, INFINITY);
  py::dict out;
  out["value"] = r.value;
  out["nearest"] = r.nearest;
  out["deviation"] = r.deviation;
  return out;
}

py::dict theta_gram(int k, cplx sigma, int N) {
  const theta::ThetaBasis b(k, point(sigma), 1e-16, N);
  py::dict out;
  out["gram"] = b.gram();
  out["closed_form"] = b.gram_closed_form();
  out["holomorphicity"] = b.max_holomorphicity_residual();
  out["offdiagonal"] = b.max_offdiag_gram();
  return out;
}

std::vector<py::dict> expansion(const std::string& f, const std::string& g, cplx sigma, const std::vector<int>& ks) {
  const toeplitz::ExpansionTable t = toeplitz::expansion_residual(cli::parse_symbol(f), cli::parse_symbol(g), point(sigma), ks);
  std::vector<py::dict> rows;
  for (const auto& r : t.rows) {
    py::dict d;
    d["k"] = r.k;
    d["e0"] = r.e0;
    d["e1"] = r.e1;
    rows.push_back(d);
  }
  return rows;
}

py::dict loop_defect(int k, cplx centre, double side) {
  const hitchin::LoopDefect d = hitchin::loop_defect(hitchin::square_loop(point(centre), side), k);
  py::dict out;
  out["defect"] = d.defect;
  out["deviation"] = d.deviation;
  out["scalar"] = d.scalar;
  out["holonomy"] = d.transport.matrix;
  return out;
}

py::dict star_order1(const std::string& f, const std::string& g, cplx sigma) {
  const formal::StarOrder1 r = formal::star_order1(cli::parse_symbol(f), cli::parse_symbol(g), point(sigma));
  py::dict out;
  out["order1"] = r.product.order(1).to_string();
  out["expected"] = r.expected.to_string();
  out["poisson_residual"] = r.poisson_residual;
  out["symmetric_part"] = r.symmetric_part;
  return out;
}

std::string run_criterion(int id, std::uint64_t seed) {
  for (const auto& c : cli::criteria()) {
    if (c.id != id) continue;
    const cli::SuiteResult r = c.run(seed);
    report::json checks = report::json::array();
    for (const auto& check : r.checks) checks.push_back(report::to_json(check));
    return report::json{{"criterion", id}, {"name", c.name}, {"pass", r.pass()}, {"checks", checks}}.dump();
  }
  throw DomainError("no criterion " + std::to_string(id));
}

std::pair<int, std::string> run(std::vector<std::string> args) {
  args.insert(args.begin(), "quantlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, out);
  return {code, out.str()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantization of the torus: modular data, theta sections, Toeplitz operators and the Hitchin connection";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  m.def("s_matrix", &s_matrix, py::arg("n"), py::arg("k"));
  m.def("curve_spectrum", &curve_spectrum, py::arg("label"), py::arg("n"), py::arg("k"));
  m.def("verlinde_dim", &verlinde_dim, py::arg("n"), py::arg("k"), py::arg("genus"),
        py::arg("boundary") = std::vector<std::string>{});
  m.def("theta_gram", &theta_gram, py::arg("k"), py::arg("sigma") = cplx(0.0, 1.0), py::arg("N") = 0);
  m.def(
      "toeplitz",
      [](int k, cplx sigma, const std::string& f) { return toeplitz::toeplitz(k, point(sigma), cli::parse_symbol(f)).matrix; },
      py::arg("k"), py::arg("sigma"), py::arg("f"));
  m.def("expansion_residual", &expansion, py::arg("f"), py::arg("g"), py::arg("sigma"), py::arg("k_list"));
  m.def("loop_defect", &loop_defect, py::arg("k"), py::arg("centre") = cplx(0.0, 1.0), py::arg("side") = 0.2);
  m.def("star_order1", &star_order1, py::arg("f"), py::arg("g"), py::arg("sigma") = cplx(0.0, 1.0));
  m.def("criteria", [] {
    std::vector<std::pair<int, std::string>> out;
    for (const auto& c : cli::criteria()) out.emplace_back(c.id, c.name);
    return out;
  });
  m.def("run_criterion", &run_criterion, py::arg("id"), py::arg("seed") = 7);
  m.def("run", &run, py::arg("args"), "Runs the command-line front end; returns (exit code, log).");
}
