#pragma once

// Parameterized verification suites shared by the subcommands and the
// acceptance criteria.

#include <cstdint>
#include <vector>

#include "quantlab/cli.hpp"
#include "quantlab/convergence.hpp"
#include "quantlab/modular_data.hpp"

namespace quantlab::cli::detail {

using torus::TangentVector;
using torus::TeichPoint;

report::json sigma_json(const TeichPoint& s);
report::json fit_json(const SlopeFit& fit);
/// Slope criterion record: residual is the fitted slope, or the largest
/// residual when every point sits at the roundoff floor.
report::Check slope_check(const std::string& name, report::json inputs, const SlopeFit& fit, double bound,
                          double largest);

SuiteResult smatrix_suite(int n, int k, double tol, bool with_matrix);
SuiteResult su2_closed_form(int k, double tol);
SuiteResult curve_spectrum_suite(int n, int k, const modular::Label& label, double tol);
SuiteResult verlinde_suite(int n, int k, int genus, const std::vector<modular::Label>& boundary, double tol);

SuiteResult gram_suite(int k, const TeichPoint& s, int N, double holo_tol, double diag_tol, double closed_tol);
SuiteResult toeplitz_suite(int k, const TeichPoint& s, const TrigPoly& f, int N, double tol);
SuiteResult identities_suite(int k, const TeichPoint& s, int N, std::uint64_t seed, double tol);

SuiteResult star_suite(const TrigPoly& f, const TrigPoly& g, const TeichPoint& s, const std::vector<int>& k_list,
                       double antisym_tol);
SuiteResult reparametrization_suite(const TrigPoly& f, const TrigPoly& g, const TeichPoint& s,
                                    const std::vector<int>& n_list, double tol);
SuiteResult gap_suite(const TeichPoint& s, const std::vector<int>& k_list, double tol);

SuiteResult eqcond_suite(int k, const TeichPoint& s, int N, double tol);
SuiteResult transport_suite(int k, const TeichPoint& from, const TeichPoint& to, int N, double tol);
SuiteResult loop_suite(int k, const TeichPoint& centre, double side, int N, double tol);
SuiteResult endo_suite(const TrigPoly& f, const TeichPoint& s, const std::vector<int>& k_list,
                       const std::vector<int>& grid_k, double grid_tol);
SuiteResult formal_suite(const TrigPoly& f, const TrigPoly& g, const TeichPoint& s, const std::vector<int>& eh_k,
                         const std::vector<int>& flat_k);

}  // namespace quantlab::cli::detail
