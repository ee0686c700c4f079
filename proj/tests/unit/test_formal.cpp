#include <doctest.h>

#include "quantlab/errors.hpp"
#include "quantlab/formal_hitchin.hpp"

using namespace quantlab;
using namespace quantlab::formal;

namespace {

const TrigPoly kF = TrigPoly::mode(1, 1) + TrigPoly::cos_x(2);
const TrigPoly kG = TrigPoly::sin_y() + TrigPoly::mode(2, -1);

}  // namespace

TEST_CASE("formal functions") {
  CHECK_THROWS_AS(FormalFunction({kF, kF, kF, kF}), TruncationError);
  const FormalFunction a({kF, kG}), b = FormalFunction::from(kG);
  CHECK(max_diff((a + b).order(0), kF + kG) < 1e-15);
  CHECK((a - a).order(1).max_coeff() == 0.0);
  CHECK(a.truncated(0).size() == 1);
  CHECK(a.order(2).is_zero());
}

TEST_CASE("star tilde at order one is the c1 symbol") {
  const TeichPoint s(0.3, 0.7);
  const FormalFunction p = star_tilde(s, FormalFunction::from(kF), FormalFunction::from(kG));
  CHECK(max_diff(p.order(0), kF * kG) < 1e-13);
  CHECK(max_diff(p.order(1), toeplitz::c1_symbol(s, kF, kG)) < 1e-13);
}

TEST_CASE("formal connection") {
  const TeichPoint s(0.0, 1.0);
  for (const TangentVector& v : {TangentVector::d_sigma1(), TangentVector::d_sigma2()}) {
    const DTerms d = formal_D_terms(v, s, FormalFunction::from(kF));
    CHECK(d.total.order(0).max_coeff() < 1e-14);
    for (double t : d.ricci_term_sizes) CHECK(t == 0.0);
    CHECK(p_flatness_order1(v, s, kF).max_coeff() < 1e-10);
    CHECK(derivation_residual(v, s, kF, kG) < 1e-10);
    CHECK(eh_defining_residual(v, s, kF, 4) < 1e-8);
    // H(V) = E(V)(1) vanishes without a Ricci potential.
    CHECK(E_and_H(v, s, kF).H.max_coeff() < 1e-15);
  }
}

TEST_CASE("second-order differences in sigma converge at rate two") {
  const TeichPoint s(0.0, 1.0);
  const TangentVector v = TangentVector::d_sigma2();
  const double r1 = p_flatness_residual(v, s, kF, 1e-2), r2 = p_flatness_residual(v, s, kF, 5e-3);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("induced star product") {
  for (const TeichPoint& s : {TeichPoint(0.0, 1.0), TeichPoint(1.0, 1.0), TeichPoint(0.3, 0.7)}) {
    const StarOrder1 r = star_order1(kF, kG, s);
    CHECK(r.poisson_residual < 1e-12);
    CHECK(r.symmetric_part < 1e-12);
    CHECK(max_diff(r.product.order(0), kF * kG) < 1e-13);
    CHECK(max_diff(r.product.order(1), r.expected) < 1e-12);
  }
  CHECK(max_diff(P_inverse_order1(TeichPoint(0.0, 1.0), P_order1(TeichPoint(0.0, 1.0), kF)).truncated(1).order(1),
                 TrigPoly()) < 1e-12);
}

TEST_CASE("Toeplitz operators follow the formal connection") {
  const FormalFlatnessTable t =
      formal_flatness(kF, TeichPoint(0.0, 1.0), TangentVector::d_sigma2(), {4, 8, 16});
  for (const auto& row : t.rows) CHECK(row.residual < 1e-10);
}
