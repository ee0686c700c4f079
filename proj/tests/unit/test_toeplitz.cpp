#include <doctest.h>

#include <cmath>
#include <random>

#include "quantlab/errors.hpp"
#include "quantlab/toeplitz.hpp"

using namespace quantlab;
using namespace quantlab::toeplitz;
using torus::TangentVector;

namespace {

const double kPi = std::acos(-1.0);

CompressedOp T(int k, const TeichPoint& s, const TrigPoly& f) { return quantlab::toeplitz::toeplitz(k, s, f); }

double dist(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("closed form agrees with quadrature") {
  std::mt19937_64 rng(9);
  for (int k : {1, 3, 5}) {
    const TeichPoint s(0.3, 0.7);
    const theta::ThetaBasis basis(k, s);
    const TrigPoly f = TrigPoly::random(rng, 2, false);
    CHECK(dist(T(k, s, f).matrix, toeplitz_quadrature(basis, f).matrix) < 1e-10);
  }
}

TEST_CASE("basic operator identities") {
  const int k = 4;
  const TeichPoint s(-0.2, 1.1);
  std::mt19937_64 rng(4);
  const TrigPoly f = TrigPoly::random(rng, 2, false);
  const TrigPoly g = TrigPoly::random(rng, 2, true);
  CHECK(dist(T(k, s, TrigPoly::constant(1.0)).matrix, Eigen::MatrixXcd::Identity(k, k)) < 1e-14);
  CHECK(dist(T(k, s, f.conj()).matrix, T(k, s, f).matrix.adjoint()) < 1e-13);
  CHECK(T(k, s, g).hermitian());
  CHECK(dist(T(k, s, f + g).matrix, T(k, s, f).matrix + T(k, s, g).matrix) < 1e-13);
  // T_f is a contraction of multiplication by f.
  CHECK(operator_norm(T(k, s, g)) <= g.l1_norm() + 1e-12);
}

TEST_CASE("mode product rule") {
  // T_a T_b = exp(c1(e_a, e_b) / k) T_{a+b} with c1(e_a, e_b) the constant symbol coefficient.
  const int k = 5;
  const TeichPoint s(0.4, 0.8);
  for (auto [a, b] : std::vector<std::pair<Mode, Mode>>{{{1, 0}, {0, 1}}, {{1, 2}, {-1, 1}}, {{2, -1}, {3, 0}}}) {
    const TrigPoly ea = TrigPoly::mode(a.first, a.second), eb = TrigPoly::mode(b.first, b.second);
    const cplx c1 = c1_symbol(s, ea, eb).coeff(a.first + b.first, a.second + b.second);
    const Eigen::MatrixXcd lhs = mode_matrix(k, s, a.first, a.second) * mode_matrix(k, s, b.first, b.second);
    const Eigen::MatrixXcd rhs = std::exp(c1 / static_cast<double>(k)) * mode_matrix(k, s, a.first + b.first, a.second + b.second);
    CHECK(dist(lhs, rhs) < 1e-13);
  }
}

TEST_CASE("mode matrix derivative") {
  const int k = 3;
  const TeichPoint s(0.1, 0.9);
  const double h = 1e-5;
  const Eigen::MatrixXcd fd =
      (mode_matrix(k, TeichPoint(0.1, 0.9 + h), 2, -1) - mode_matrix(k, TeichPoint(0.1, 0.9 - h), 2, -1)) / (2 * h);
  CHECK(dist(fd, mode_matrix_derivative(k, s, 2, -1, TangentVector::d_sigma2())) < 1e-8);
}

TEST_CASE("c1 symbol") {
  const TeichPoint s(0.3, 0.7);
  const TrigPoly f = TrigPoly::cos_x() + TrigPoly::mode(1, 1), g = TrigPoly::sin_y() * TrigPoly::cos_x(2);
  CHECK(max_diff(c1_symbol(s, f, g), c1_symbol_modes(s, f, g)) < 1e-12);
  const TrigPoly anti = c1_symbol(s, f, g) - c1_symbol(s, g, f) + cplx(0, 1) * torus::poisson(f, g);
  CHECK(anti.max_coeff() < 1e-12);
}

TEST_CASE("product expansion rates") {
  const ExpansionTable t =
      expansion_residual(TrigPoly::mode(1, 0), TrigPoly::mode(0, 1), TeichPoint(0.0, 1.0), {16, 32, 64, 128});
  CHECK(t.fit0.slope == doctest::Approx(-1.0).epsilon(0.1));
  CHECK(t.fit1.slope == doctest::Approx(-2.0).epsilon(0.1));
  CHECK(t.rows.size() == 4);
}

TEST_CASE("reparametrized series") {
  // 1/k = t + (n/2) t^2 + ... so c~2 = c2 + (n/2) c1.
  const TrigPoly c0 = TrigPoly::cos_x(), c1 = TrigPoly::sin_y(), c2 = TrigPoly::mode(1, 1);
  const StarSeries s{{c0, c1, c2}, SeriesConvention::InverseK, 0};
  for (int n = 0; n <= 3; ++n) {
    const StarSeries r = reparametrize_series(s, n);
    CHECK(r.convention == SeriesConvention::InverseShiftedK);
    CHECK(max_diff(r.terms[0], c0) == 0.0);
    CHECK(max_diff(r.terms[1], c1) == 0.0);
    CHECK(max_diff(r.terms[2], c2 + (n / 2.0) * c1) < 1e-15);
    // Numerically: sum c_l / k^l and sum c~_l t^l agree to O(t^3).
    auto eval = [](const std::vector<TrigPoly>& c, double t) {
      TrigPoly out;
      double p = 1.0;
      for (const auto& term : c) {
        out += p * term;
        p *= t;
      }
      return out;
    };
    const double k = 64;
    const double d = max_diff(eval(s.terms, 1.0 / k), eval(r.terms, 1.0 / (k + n / 2.0)));
    CHECK(d < 10.0 / (k * k * k));
  }
}

TEST_CASE("compressed identities") {
  const theta::ThetaBasis basis(4, TeichPoint(0.0, 1.0));
  for (const IdentityCheck& c : compressed_identities(basis, 7, 8)) {
    INFO(c.name);
    CHECK(c.pass);
  }
}

TEST_CASE("abelian curve operator gap") {
  const GapTable t = abelian_curve_operator_gap({8, 16, 32}, TeichPoint(0.0, 1.0));
  CHECK(t.max_closed_form_residual < 1e-10);
  // lambda_{1,0} = 2 pi at sigma = i for the metric of omega = 2 pi dx^dy.
  for (const GapRow& r : t.rows) {
    CHECK(r.unitarity < 1e-12);
    CHECK(r.closed_form == doctest::Approx(1.0 - std::exp(-2 * kPi / (4.0 * r.k))));
  }
  CHECK(t.fit.slope < -0.9);
}
