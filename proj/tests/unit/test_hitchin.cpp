#include <doctest.h>

#include <cmath>
#include <random>

#include "quantlab/errors.hpp"
#include "quantlab/hitchin.hpp"

using namespace quantlab;
using namespace quantlab::hitchin;

namespace {

const cplx kI(0.0, 1.0);

}  // namespace

TEST_CASE("theta sections solve the heat equation in sigma") {
  // d theta_j / d sigma1 - u(d/dsigma1) theta_j must be a multiple of theta_j.
  const int k = 3, N = 48;
  const double h = 1e-4;
  const TeichPoint s(0.2, 0.9);
  const theta::ThetaBasis plus(k, TeichPoint(0.2 + h, 0.9), 1e-16, N), minus(k, TeichPoint(0.2 - h, 0.9), 1e-16, N);
  const theta::ThetaBasis basis(k, s, 1e-16, N);
  const ConnectionOperator u = connection_operator(s, TangentVector::d_sigma1(), k);
  for (int j = 0; j < k; ++j) {
    const GridSection fd = (plus.theta(j) - minus.theta(j)) * cplx(1.0 / (2 * h));
    const GridSection r = fd - u.apply(basis.theta(j));
    const cplx c = theta::inner_product(r, basis.theta(j)) / theta::inner_product(basis.theta(j), basis.theta(j));
    CHECK(theta::norm(r - basis.theta(j) * c) < 1e-6 * theta::norm(basis.theta(j)));
  }
}

TEST_CASE("connection preserves holomorphic sections") {
  for (const TeichPoint& s : {TeichPoint(0.0, 1.0), TeichPoint(1.0, 1.0)}) {
    const theta::ThetaBasis basis(4, s);
    for (const TangentVector& v :
         {TangentVector::d_sigma1(), TangentVector::d_sigma2(), TangentVector::antiholomorphic(1.0)})
      for (int j = 0; j < 4; ++j) CHECK(eqcond_residual(s, v, 4, basis.theta(j)) < 1e-6);
  }
  std::mt19937_64 rng(1);
  const GridSection junk = theta::random_section(2, 32, rng);
  CHECK_THROWS_AS(eqcond_residual(TeichPoint(0.0, 1.0), TangentVector::d_sigma1(), 2, junk), PreconditionError);
}

TEST_CASE("transport is scalar and reversible") {
  const int k = 2;
  const TeichPoint a(0.0, 1.0), b(0.2, 1.1);
  const TransportResult fwd = parallel_transport({a, b}, k);
  const TransportResult back = parallel_transport({b, a}, k);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(k, k);
  CHECK((fwd.matrix * back.matrix - id).cwiseAbs().maxCoeff() < 1e-6);
  const cplx c = fwd.matrix.trace() / static_cast<double>(k);
  CHECK((fwd.matrix - c * id).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(std::abs(std::abs(c) - 1.0) < 1e-6);
  CHECK(fwd.max_holo_residual < 1e-4);
}

TEST_CASE("loop defect vanishes while the holonomy is a phase") {
  const LoopDefect d = loop_defect(square_loop(TeichPoint(0.0, 1.0), 0.2), 2);
  CHECK(d.defect < 1e-8);
  CHECK(d.deviation == doctest::Approx(0.0101).epsilon(0.02));
  CHECK(std::abs(std::abs(d.scalar) - 1.0) < 1e-8);
}

TEST_CASE("endomorphism derivative: three evaluations agree") {
  const TrigPoly f = TrigPoly::cos_x() + TrigPoly::mode(1, 1);
  const TeichPoint s(0.0, 1.0);
  for (int k : {2, 3}) {
    const cplx dsigma(0.6, 0.8);
    const TangentVector v = TangentVector::real(dsigma);
    const auto analytic = endo_derivative(f, s, v, k).matrix;
    const auto central = endo_derivative(f, s, v, k, EndoMethod::CentralDifference).matrix;
    const auto grid = endo_derivative_grid(f, s, dsigma, k);
    CHECK((analytic - central).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((analytic - grid).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("Toeplitz sections are asymptotically flat") {
  const FlatnessTable t =
      toeplitz_flatness(TrigPoly::cos_x(), TeichPoint(0.0, 1.0), TangentVector::d_sigma2(), {8, 16, 32, 64});
  CHECK(slope_at_most(t.fit, -0.9));
}

TEST_CASE("argument errors") {
  CHECK_THROWS_AS(parallel_transport({}, 2), DomainError);
  CHECK_THROWS_AS(connection_operator(TeichPoint(0.0, 1.0), TangentVector::d_sigma1(), 0), DomainError);
}

TEST_CASE("u(V) is of order one on theta sections") {
  // The 1/(4k) prefactor is offset by Delta_{G(V)} growing like k on level-k theta sections.
  std::vector<double> ratios;
  for (int k : {4, 8, 16}) {
    const theta::ThetaBasis basis(k, TeichPoint(0.0, 1.0));
    const ConnectionOperator u = connection_operator(basis.sigma(), TangentVector::d_sigma2(), k);
    ratios.push_back(theta::norm(u.apply(basis.frame(0))));
  }
  MESSAGE("|u theta_0| at k = 4, 8, 16: " << ratios[0] << " " << ratios[1] << " " << ratios[2]);
  CHECK(ratios[1] / ratios[0] == doctest::Approx(1.0).epsilon(0.25));
  CHECK(ratios[2] / ratios[1] == doctest::Approx(1.0).epsilon(0.25));
  // Linearity in V.
  const theta::ThetaBasis basis(4, TeichPoint(0.0, 1.0));
  const GridSection a = connection_operator(basis.sigma(), TangentVector::real(cplx(0.0, 2.0)), 4).apply(basis.frame(1));
  const GridSection b = connection_operator(basis.sigma(), TangentVector::d_sigma2(), 4).apply(basis.frame(1));
  CHECK(theta::norm(a - b * cplx(2.0)) < 1e-12 * theta::norm(b));
}
