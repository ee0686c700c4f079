#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "quantlab/errors.hpp"
#include "quantlab/modular_data.hpp"

using namespace quantlab;
using namespace quantlab::modular;

namespace {

const double kPi = std::acos(-1.0);

// Sum over semistandard tableaux of the given shape with entries 1..n.
cplx schur_by_tableaux(const std::vector<int>& shape, const std::vector<cplx>& x) {
  std::vector<std::vector<int>> t;
  for (int r : shape) t.emplace_back(static_cast<std::size_t>(r), 0);
  const int n = static_cast<int>(x.size());
  cplx total = 0.0;
  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t row, std::size_t col) {
    if (row == t.size()) {
      cplx term = 1.0;
      for (const auto& r : t)
        for (int v : r) term *= x[static_cast<std::size_t>(v - 1)];
      total += term;
      return;
    }
    if (col == t[row].size()) {
      fill(row + 1, 0);
      return;
    }
    int lo = 1;
    if (col > 0) lo = std::max(lo, t[row][col - 1]);
    if (row > 0) lo = std::max(lo, t[row - 1][col] + 1);
    for (int v = lo; v <= n; ++v) {
      t[row][col] = v;
      fill(row, col + 1);
    }
  };
  fill(0, 0);
  return total;
}

// SU(2) level-k fusion rule from the truncated Clebsch-Gordan series.
int fusion_su2(int a, int b, int c, int k) {
  return (a + b + c) % 2 == 0 && c >= std::abs(a - b) && c <= std::min(a + b, 2 * k - a - b) ? 1 : 0;
}

}  // namespace

TEST_CASE("labels parse, print and order") {
  CHECK(Label::parse("(2,1)").to_string() == "(2,1)");
  CHECK(Label::parse("2 1 0").rows() == std::vector<int>{2, 1});
  CHECK(Label::parse("()").is_trivial());
  CHECK(Label::parse("0").is_trivial());
  const auto set = build_label_set(3, 2);
  std::vector<std::string> names;
  for (const auto& l : set) names.push_back(l.to_string());
  CHECK(names == std::vector<std::string>{"()", "(1)", "(2)", "(1,1)", "(2,1)", "(2,2)"});
}

TEST_CASE("label set sizes are binomial") {
  for (int n = 2; n <= 5; ++n)
    for (int k = 0; k <= 6; ++k) {
      double c = 1.0;
      for (int i = 1; i <= n - 1; ++i) c = c * (k + i) / i;
      CHECK(build_label_set(n, k).size() == static_cast<std::size_t>(std::lround(c)));
    }
}

TEST_CASE("duals and dimensions") {
  CHECK(dual(Label({1}), 3, 2).to_string() == "(1,1)");
  CHECK(dual(Label({2, 1}), 3, 2).to_string() == "(2,1)");
  CHECK(dual(dual(Label({3, 1}), 4, 3), 4, 3) == Label({3, 1}));
  CHECK(dimension(Label({2, 1}), 3) == doctest::Approx(8.0));
  CHECK(dimension(Label({3}), 2) == doctest::Approx(4.0));
  CHECK(dimension(Label({1, 1}), 4) == doctest::Approx(6.0));
}

TEST_CASE("Schur polynomials agree with tableau sums") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  for (const auto& shape : std::vector<std::vector<int>>{{1}, {2}, {2, 1}, {3, 1}, {2, 2, 1}, {3, 2}}) {
    for (int n : {3, 4}) {
      if (static_cast<int>(shape.size()) > n) continue;
      std::vector<cplx> x;
      for (int i = 0; i < n; ++i) x.push_back(std::polar(1.0, u(rng)));
      const cplx oracle = schur_by_tableaux(shape, x);
      CHECK(std::abs(schur_alternant(Label(shape), x) - oracle) < 1e-10);
      CHECK(std::abs(schur_jacobi_trudi(Label(shape), x) - oracle) < 1e-10);
    }
  }
}

TEST_CASE("S-matrix at SU(2) level 1") {
  const ModularData d = s_matrix(2, 1);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(d.S(0, 0) - r) < 1e-12);
  CHECK(std::abs(d.S(0, 1) - r) < 1e-12);
  CHECK(std::abs(d.S(1, 1) + r) < 1e-12);
}

TEST_CASE("SU(2) S-matrix matches the sine formula") {
  for (int k = 1; k <= 12; ++k) {
    const ModularData d = s_matrix(2, k);
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b) {
        const double s = std::sqrt(2.0 / (k + 2)) * std::sin((a + 1) * (b + 1) * kPi / (k + 2));
        CHECK(std::abs(d.S(d.index_of(Label({a})), d.index_of(Label({b}))) - s) < 1e-12);
      }
  }
}

TEST_CASE("S-matrix invariants for SU(3) and SU(4)") {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{3, 5}, {4, 3}}) {
    const ModularData d = s_matrix(n, k);
    const SMatrixResiduals r = residuals(d);
    CHECK(r.unitarity < 1e-12);
    CHECK(r.symmetry < 1e-12);
    CHECK(r.dual_square < 1e-12);
    CHECK(r.min_first_row > 0.0);
    // Quantum dimensions S_{lambda 0} / S_00 tend to Weyl dimensions only as k grows;
    // at any level they are at least one.
    for (std::size_t i = 0; i < d.labels.size(); ++i) CHECK(d.R(0, static_cast<Eigen::Index>(i)).real() > 0.0);
  }
}

TEST_CASE("curve spectrum at SU(2) level 2") {
  const auto s = curve_spectrum(Label({1}), 2, 2);
  REQUIRE(s.size() == 3);
  CHECK(std::abs(s[0].eigenvalue - std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(s[1].eigenvalue) < 1e-12);
  CHECK(std::abs(s[2].eigenvalue + std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("Verlinde dimensions against fusion counting") {
  CHECK(verlinde_dim(2, 1, 2, {}).nearest == 4);
  for (int k = 1; k <= 6; ++k) {
    // Genus 2 as two trivalent vertices joined by three edges.
    long long g2 = 0;
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b)
        for (int c = 0; c <= k; ++c) g2 += fusion_su2(a, b, c, k);
    CHECK(verlinde_dim(2, k, 2, {}).nearest == g2);
    // Torus: one label per edge of a loop.
    CHECK(verlinde_dim(2, k, 1, {}).nearest == k + 1);
    // Sphere with three marked points.
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b)
        for (int c = 0; c <= k; ++c)
          CHECK(verlinde_dim(2, k, 0, {Label({a}), Label({b}), Label({c})}).nearest == fusion_su2(a, b, c, k));
  }
}

TEST_CASE("Verlinde closed form for SU(2)") {
  for (int k = 1; k <= 10; ++k)
    for (int g = 2; g <= 3; ++g) {
      double sum = 0.0;
      for (int j = 1; j <= k + 1; ++j) sum += std::pow(std::sin(j * kPi / (k + 2)), 2.0 - 2.0 * g);
      const double expected = std::pow((k + 2) / 2.0, g - 1) * sum;
      CHECK(verlinde_dim(2, k, g, {}).value == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(s_matrix(1, 3), DomainError);
  CHECK_THROWS_AS(s_matrix(2, -1), DomainError);
  CHECK_THROWS_AS(Label::parse("a,b"), DomainError);
}
