#include <chrono>
#include <cmath>

#include "quantlab/modular_data.hpp"
#include "suites.hpp"

namespace quantlab::cli {

using namespace detail;
using report::json;
using report::make_check;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string tag(const json& in) {
  std::string s;
  for (auto it = in.begin(); it != in.end(); ++it) {
    if (!s.empty()) s += ",";
    s += it.key() + "=" + (it.value().is_string() ? it.value().get<std::string>() : it.value().dump());
  }
  return s;
}

const TeichPoint kI0(0.0, 1.0);

SuiteResult c1_smatrix(std::uint64_t) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  for (int n : {2, 3})
    for (int k = 1; k <= 20; ++k) r.merge(smatrix_suite(n, k, 1e-10, false), tag({{"n", n}, {"k", k}}) + ".");
  r.merge(smatrix_suite(4, 6, 1e-10, false), "n=4,k=6.");
  r.checks.push_back(make_check("runtime_seconds", json::object(), seconds_since(t0), 30.0));
  return r;
}

SuiteResult c2_su2(std::uint64_t) {
  SuiteResult r;
  for (int k = 1; k <= 20; ++k) r.merge(su2_closed_form(k, 1e-10));
  return r;
}

SuiteResult c3_verlinde(std::uint64_t) {
  SuiteResult r;
  for (int k = 1; k <= 12; ++k) {
    const modular::ModularData d = modular::s_matrix(2, k, 1e-10);
    for (int genus = 0; genus <= 3; ++genus) {
      // Closed surfaces and every boundary labelling with at most two boundary components.
      std::vector<std::vector<modular::Label>> boundaries{{}};
      for (std::size_t a = 0; a < d.labels.size(); ++a) {
        boundaries.push_back({d.labels[a]});
        for (std::size_t b = a; b < d.labels.size(); ++b) boundaries.push_back({d.labels[a], d.labels[b]});
      }
      double worst = 0.0;
      bool nonnegative = true;
      for (const auto& bd : boundaries) {
        const modular::VerlindeResult v = modular::verlinde_dim(d, genus, bd, INFINITY);
        worst = std::max(worst, v.deviation);
        nonnegative = nonnegative && v.nearest >= 0;
      }
      const json in = {{"n", 2}, {"k", k}, {"genus", genus}, {"labellings", boundaries.size()}};
      r.checks.push_back(make_check("verlinde_integrality", in, worst, 1e-6, worst <= 1e-6 && nonnegative));
    }
  }
  const modular::VerlindeResult g2 = modular::verlinde_dim(2, 1, 2, {}, INFINITY);
  r.checks.push_back(make_check("genus2_level1_is_4", {{"n", 2}, {"k", 1}, {"genus", 2}}, std::abs(g2.value - 4.0),
                                1e-12));
  return r;
}

SuiteResult c4_theta(std::uint64_t) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  for (const TeichPoint& s : {kI0, TeichPoint(1.0, 1.0), TeichPoint(0.3, 0.7)})
    for (int k = 1; k <= 16; ++k) r.merge(gram_suite(k, s, 0, 1e-8, 1e-10, 1e-8));
  r.tables.clear();
  r.checks.push_back(make_check("runtime_seconds", json::object(), seconds_since(t0), 120.0));
  return r;
}

SuiteResult c5_identities(std::uint64_t seed) {
  SuiteResult r;
  for (int k = 1; k <= 12; ++k) r.merge(identities_suite(k, kI0, 16 * k, seed, 1e-6));
  return r;
}

SuiteResult c6_asymptotics(std::uint64_t) {
  SuiteResult r;
  const std::vector<int> ks{16, 32, 64, 128};
  const std::pair<const char*, std::pair<TrigPoly, TrigPoly>> pairs[] = {
      {"clock_shift.", {TrigPoly::mode(1, 0), TrigPoly::mode(0, 1)}},
      {"cos_cos.", {TrigPoly::cos_x(), TrigPoly::cos_x()}},
      {"conjugate_modes.", {TrigPoly::mode(1, 0), TrigPoly::mode(-1, 0)}},
  };
  for (const auto& [name, fg] : pairs) r.merge(star_suite(fg.first, fg.second, kI0, ks, 1e-12), name);
  // The antisymmetry axiom on a generic real pair as well.
  const TrigPoly f = TrigPoly::cos_x() + TrigPoly::sin_y(2), g = TrigPoly::cos_x() * TrigPoly::cos_y();
  const SuiteResult extra = star_suite(f, g, kI0, ks, 1e-12);
  for (const auto& c : extra.checks)
    if (c.check == "c1_antisymmetry") r.checks.push_back(c);
  return r;
}

SuiteResult c7_reparametrization(std::uint64_t) {
  return reparametrization_suite(TrigPoly::cos_x() + TrigPoly::mode(1, 1), TrigPoly::sin_y(), kI0, {0, 1, 2, 3},
                                 1e-12);
}

SuiteResult c8_eqcond(std::uint64_t) {
  SuiteResult r;
  for (const TeichPoint& s : {kI0, TeichPoint(1.0, 1.0)})
    for (int k = 1; k <= 12; ++k) r.merge(eqcond_suite(k, s, 0, 1e-5));
  return r;
}

SuiteResult c9_flatness(std::uint64_t) {
  SuiteResult r;
  for (int k = 1; k <= 8; ++k) {
    r.merge(loop_suite(k, kI0, 0.2, 0, 1e-3));
    r.merge(transport_suite(k, kI0, TeichPoint(0.2, 1.1), 0, 1e-4));
  }
  r.tables.clear();
  return r;
}

SuiteResult c10_endo(std::uint64_t) {
  return endo_suite(TrigPoly::cos_x(), kI0, {8, 16, 32, 64}, {2, 3}, 1e-6);
}

SuiteResult c11_formal(std::uint64_t) {
  const TrigPoly f = TrigPoly::mode(1, 1) + TrigPoly::cos_x(2);
  const TrigPoly g = TrigPoly::sin_y() + TrigPoly::mode(2, -1);
  return formal_suite(f, g, kI0, {2, 4, 8, 16}, {4, 8, 16, 32});
}

SuiteResult c12_gap(std::uint64_t) { return gap_suite(kI0, {8, 16, 32, 64, 128}, 1e-8); }

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "S-matrix suite", c1_smatrix},
      {2, "SU(2) sine closed form", c2_su2},
      {3, "Verlinde integrality", c3_verlinde},
      {4, "theta basis", c4_theta},
      {5, "compressed identities", c5_identities},
      {6, "Toeplitz product asymptotics", c6_asymptotics},
      {7, "reparametrization", c7_reparametrization},
      {8, "connection preserves holomorphic sections", c8_eqcond},
      {9, "projective flatness", c9_flatness},
      {10, "asymptotic flatness of Toeplitz sections", c10_endo},
      {11, "formal connection suite", c11_formal},
      {12, "abelian curve operator", c12_gap},
  };
  return list;
}

}  // namespace quantlab::cli
