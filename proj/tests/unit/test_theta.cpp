#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "quantlab/errors.hpp"
#include "quantlab/theta_sections.hpp"

using namespace quantlab;
using namespace quantlab::theta;

namespace {

const double kPi = std::acos(-1.0);
const cplx kI(0.0, 1.0);

// Direct lattice sum sum_n exp(pi i k sigma t^2 + 2 pi i k x t), t = y - n - j/k.
cplx lattice_theta(int k, int j, cplx sigma, double x, double y) {
  cplx sum = 0.0;
  for (int n = -40; n <= 40; ++n) {
    const double t = y - n - static_cast<double>(j) / k;
    sum += std::exp(kI * kPi * static_cast<double>(k) * sigma * t * t + 2.0 * kI * kPi * static_cast<double>(k) * x * t);
  }
  return sum;
}

}  // namespace

TEST_CASE("theta sections match the lattice sum") {
  for (const TeichPoint& s : {TeichPoint(0.0, 1.0), TeichPoint(0.3, 0.7)}) {
    const int k = 3, N = 24;
    const ThetaBasis basis(k, s, 1e-16, N);
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < N; i += 5)
        for (int l = 0; l < N; l += 7) {
          const cplx v = lattice_theta(k, j, s.sigma(), static_cast<double>(i) / N, static_cast<double>(l) / N);
          CHECK(std::abs(basis.theta(j).values(i, l) - v) < 1e-12);
        }
      CHECK(std::abs(basis.evaluate(j, 0.37, 0.81) - lattice_theta(k, j, s.sigma(), 0.37, 0.81)) < 1e-12);
    }
  }
}

TEST_CASE("quasi-periodicity") {
  const ThetaBasis basis(4, TeichPoint(0.2, 0.9), 1e-16, 32);
  for (int j = 0; j < 4; ++j) {
    const double x = 0.13, y = 0.61;
    const cplx shifted = basis.evaluate(j, x + 1.0, y);
    CHECK(std::abs(shifted - std::exp(2.0 * kI * kPi * 4.0 * y) * basis.evaluate(j, x, y)) < 1e-12);
    CHECK(std::abs(basis.evaluate(j, x, y + 1.0) - basis.evaluate(j, x, y)) < 1e-12);
  }
}

TEST_CASE("Gram matrix") {
  for (int k : {1, 2, 5, 8}) {
    const TeichPoint s(0.3, 0.7);
    const ThetaBasis basis(k, s);
    CHECK(basis.max_holomorphicity_residual() < 1e-8);
    CHECK(basis.max_offdiag_gram() < 1e-10);
    const double closed = 2 * kPi / std::sqrt(2.0 * k * 0.7);
    CHECK(basis.gram_closed_form() == doctest::Approx(closed));
    for (int j = 0; j < k; ++j) CHECK(std::abs(basis.gram()(j, j) - closed) < 1e-8);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        CHECK(std::abs(inner_product(basis.frame(j), basis.frame(i)) - (i == j ? 1.0 : 0.0)) < 1e-10);
  }
}

TEST_CASE("projection is idempotent and self-adjoint") {
  const ThetaBasis basis(3, TeichPoint(0.0, 1.0));
  std::mt19937_64 rng(11);
  const GridSection a = random_section(3, basis.N(), rng);
  const GridSection b = random_section(3, basis.N(), rng);
  const GridSection pa = basis.projection(a);
  CHECK(norm(basis.projection(pa) - pa) < 1e-12 * norm(a));
  CHECK(std::abs(inner_product(pa, b) - inner_product(a, basis.projection(b))) < 1e-12 * norm(a) * norm(b));
  CHECK(holomorphicity_residual(basis.sigma(), pa) < 1e-8);
  CHECK(holomorphicity_residual(basis.sigma(), a) > 0.1);
}

TEST_CASE("covariant derivative: curvature and Leibniz") {
  const int k = 2, N = 48;
  std::mt19937_64 rng(5);
  const GridSection s = random_section(k, N, rng);
  // [nabla_x, nabla_y] = -2 pi i k.
  const GridSection comm = nabla_x(nabla_y(s)) - nabla_y(nabla_x(s));
  CHECK(norm(comm - s * cplx(0.0, -2 * kPi * k)) < 1e-8 * norm(s));
  const TrigPoly f = TrigPoly::cos_x() + TrigPoly::sin_y(2);
  const VectorField X = VectorField::constant(0.4, -0.9);
  const GridSection lhs = covariant_derivative(X, multiply(f, s));
  const GridSection rhs = multiply(apply(X, f), s) + multiply(f, covariant_derivative(X, s));
  CHECK(norm(lhs - rhs) < 1e-9 * norm(s));
}

TEST_CASE("fourth-order differences converge at rate four") {
  const int k = 1;
  const TrigPoly f = TrigPoly::cos_x() * TrigPoly::cos_y();
  const VectorField X = VectorField::constant(1.0, 0.5);
  auto leibniz = [&](int N) {
    const ThetaBasis basis(k, TeichPoint(0.0, 1.0), 1e-16, N);
    const GridSection s = basis.theta(0);
    const auto fd = DerivativeScheme::FiniteDifference4;
    const GridSection lhs = covariant_derivative(X, multiply(f, s), fd);
    const GridSection rhs = multiply(apply(X, f), s) + multiply(f, covariant_derivative(X, s, fd));
    return norm(lhs - rhs) / norm(s);
  };
  const double ratio = leibniz(32) / leibniz(64);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("grid CSV round trip") {
  std::mt19937_64 rng(2);
  const GridSection s = random_section(2, 16, rng);
  std::stringstream io;
  write_csv(io, s);
  const GridSection t = read_csv(io, 2);
  CHECK(t.N == 16);
  CHECK((t.values - s.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(ThetaBasis(0, TeichPoint(0.0, 1.0)), DomainError);
  CHECK_THROWS_AS(theta_tail(4, 1e-9, 1e-16), TruncationError);
  CHECK_THROWS(inner_product(GridSection(2, 16), GridSection(3, 16)));
}
