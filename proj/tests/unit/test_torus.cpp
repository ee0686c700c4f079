#include <doctest.h>

#include <cmath>

#include "quantlab/errors.hpp"
#include "quantlab/torus_model.hpp"

using namespace quantlab;
using namespace quantlab::torus;

namespace {

const double kPi = std::acos(-1.0);
const cplx kI(0.0, 1.0);

double max_abs(const CMat2& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("tangent vector components") {
  const TangentVector v = TangentVector::real(cplx(0.3, 0.2));
  CHECK(std::abs(v.d1() - 0.3) < 1e-15);
  CHECK(std::abs(v.d2() - 0.2) < 1e-15);
  CHECK(std::abs(TangentVector::d_sigma2().d1()) < 1e-15);
  CHECK(std::abs(TangentVector::d_sigma2().d2() - 1.0) < 1e-15);
  CHECK_THROWS_AS(TeichPoint(0.0, 0.0), DomainError);
}

TEST_CASE("complex structure and metric") {
  for (const TeichPoint& s : {TeichPoint(0.0, 1.0), TeichPoint(0.4, 0.7), TeichPoint(-1.3, 2.1)}) {
    const Mat2 I = complex_structure(s);
    CHECK((I * I + Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    const Mat2 g = metric(s);
    CHECK(std::abs(g(0, 1) - g(1, 0)) < 1e-14);
    CHECK(g.determinant() > 0.0);
    CHECK(g(0, 0) > 0.0);
    CHECK((g * inverse_metric(s) - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-13);
    // g(X, Y) = omega(X, I Y).
    CHECK((g - omega_matrix() * I).cwiseAbs().maxCoeff() < 1e-14);
    // dz vanishes on d/dzbar and pairs to one with d/dz.
    CHECK(std::abs((dz(s).transpose() * d_z(s)).value() - 1.0) < 1e-14);
    CHECK(std::abs((dz(s).transpose() * d_zbar(s)).value()) < 1e-14);
    // d/dz is an eigenvector of I with eigenvalue i.
    CHECK((I.cast<cplx>() * d_z(s) - kI * d_z(s)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("closed-form sigma derivatives match differences") {
  const TeichPoint s(0.3, 0.8);
  const double h = 1e-6;
  const Mat2 fdI1 = (complex_structure(TeichPoint(0.3 + h, 0.8)) - complex_structure(TeichPoint(0.3 - h, 0.8))) / (2 * h);
  const Mat2 fdI2 = (complex_structure(TeichPoint(0.3, 0.8 + h)) - complex_structure(TeichPoint(0.3, 0.8 - h))) / (2 * h);
  CHECK((fdI1 - dI_dsigma1(s)).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((fdI2 - dI_dsigma2(s)).cwiseAbs().maxCoeff() < 1e-8);
  const Mat2 fdg2 = (inverse_metric(TeichPoint(0.3, 0.8 + h)) - inverse_metric(TeichPoint(0.3, 0.8 - h))) / (2 * h);
  CHECK((fdg2 - dginv_dsigma2(s)).cwiseAbs().maxCoeff() < 1e-8);
  const TangentVector v = TangentVector::real(cplx(0.6, -0.8));
  CHECK(max_abs(variation_I(s, v) - variation_I_fd(s, v)) < 1e-8);
  // A real direction is the combination of the two partials.
  const CMat2 expected = (0.6 * dI_dsigma1(s) - 0.8 * dI_dsigma2(s)).cast<cplx>();
  CHECK(max_abs(variation_I(s, v) - expected) < 1e-12);
}

TEST_CASE("G(V) is a (2,0) bivector") {
  const TeichPoint s(0.2, 1.3);
  for (const TangentVector& v : {TangentVector::d_sigma1(), TangentVector::d_sigma2(), TangentVector::holomorphic(1.0)}) {
    const GBivectors b = g_bivectors(s, v);
    CHECK(b.identity_residual < 1e-12);
    CHECK(b.mixed_residual < 1e-12);
    CHECK(max_abs(b.g_tilde - b.g_tilde.transpose()) < 1e-13);
    CHECK(max_abs(b.g - zz_bivector(s, b.g_coeff)) < 1e-13);
    // Contracting a (2,0) bivector with dzbar gives zero.
    CHECK((b.g * dz(s).conjugate()).cwiseAbs().maxCoeff() < 1e-13);
  }
  // An antiholomorphic direction has no (2,0) part.
  CHECK(std::abs(g_bivectors(s, TangentVector::antiholomorphic(1.0)).g_coeff) < 1e-14);
}

TEST_CASE("Laplacian eigenvalues") {
  const TeichPoint s(0.5, 0.9);
  const Mat2 gi = inverse_metric(s);
  for (int m = -2; m <= 2; ++m)
    for (int n = -2; n <= 2; ++n) {
      const Eigen::Vector2d kv(m, n);
      const double lambda = 4 * kPi * kPi * kv.dot(gi * kv);
      CHECK(laplace_eigenvalue(s, m, n) == doctest::Approx(lambda).epsilon(1e-12));
      const TrigPoly e = TrigPoly::mode(m, n);
      CHECK(max_diff(laplace(s, e), -lambda * e) < 1e-10);
    }
}

TEST_CASE("Poisson bracket and Hamiltonian fields") {
  const TrigPoly a = TrigPoly::mode(1, 0), b = TrigPoly::mode(0, 1);
  CHECK(max_diff(poisson(a, b), -2 * kPi * TrigPoly::mode(1, 1)) < 1e-12);
  const TrigPoly f = TrigPoly::cos_x() * TrigPoly::sin_y() + TrigPoly::mode(2, 1);
  const TrigPoly g = TrigPoly::sin_x(2) + TrigPoly::cos_y();
  CHECK(max_diff(apply(hamiltonian_field(f), g), poisson(f, g)) < 1e-12);
  CHECK(max_diff(poisson(f, g), -poisson(g, f)) < 1e-12);
  // omega(Y, X_f) = Y[f] for a constant field Y.
  const VectorField Y = VectorField::constant(0.7, -1.1);
  const VectorField X = hamiltonian_field(f);
  const Mat2 W = omega_matrix();
  const TrigPoly lhs = (W(0, 0) * 0.7 + W(1, 0) * -1.1) * X.x + (W(0, 1) * 0.7 + W(1, 1) * -1.1) * X.y;
  CHECK(max_diff(lhs, apply(Y, f)) < 1e-12);
  // Hamiltonian fields are divergence free.
  CHECK(divergence(X, TeichPoint(0.1, 1.2)).max_coeff() < 1e-12);
}

TEST_CASE("c1 tensor") {
  const TeichPoint s(0.3, 0.7);
  const CMat2 K = c1_tensor(s);
  // The antisymmetric part reproduces -(i/2){f, g}.
  const CMat2 A = 0.5 * (K - K.transpose());
  CHECK(std::abs(A(0, 1) - (-kI / (4 * kPi))) < 1e-14);
  const double h = 1e-6;
  const TangentVector v = TangentVector::d_sigma2();
  const CMat2 fd = (c1_tensor(TeichPoint(0.3, 0.7 + h)) - c1_tensor(TeichPoint(0.3, 0.7 - h))) / (2 * h);
  CHECK(max_abs(fd - c1_tensor_variation(s, v)) < 1e-8);
}
