#include "quantlab/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "quantlab/errors.hpp"
#include "quantlab/parallel.hpp"

namespace quantlab::toeplitz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

int wrap(int i, int k) { return ((i % k) + k) % k; }

// X = a d/dz.
VectorField holomorphic_field(const TeichPoint& s, const TrigPoly& a) {
  const torus::CVec2 w = torus::d_z(s);
  return {a * w(0), a * w(1)};
}

double binomial(int n, int r) {
  double b = 1.0;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

}  // namespace

bool CompressedOp::hermitian(double tol) const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() < tol;
}

Eigen::MatrixXcd mode_matrix(int k, const TeichPoint& s, int m, int n) {
  if (k < 1) throw DomainError("level k must be >= 1");
  const cplx sb = std::conj(s.sigma());
  const cplx p = static_cast<double>(n) - sb * static_cast<double>(m);
  const cplx e = -kPi * p * p / (2.0 * k * s.sigma2()) -
                 cplx(0.0, kPi) * sb * static_cast<double>(m * m) / static_cast<double>(k);
  const cplx amp = std::exp(e);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(k, k);
  for (int j = 0; j < k; ++j)
    M(wrap(j - m, k), j) = std::polar(1.0, kTwoPi * wrap(n * j, k) / k) * amp;
  return M;
}

Eigen::MatrixXcd mode_matrix_derivative(int k, const TeichPoint& s, int m, int n, const torus::TangentVector& v) {
  // E = -pi p^2 / (2 k sigma2) - pi i conj(sigma) m^2 / k with p = n - conj(sigma) m.
  const double b = s.sigma2(), dm = m, dn = n;
  const cplx p = dn - std::conj(s.sigma()) * dm;
  const cplx i(0.0, 1.0);
  const cplx dE1 = kPi * dm * p / (k * b) - i * kPi * dm * dm / static_cast<double>(k);
  const cplx dE2 = -i * kPi * dm * p / (k * b) + kPi * p * p / (2.0 * k * b * b) - kPi * dm * dm / k;
  return (v.d1() * dE1 + v.d2() * dE2) * mode_matrix(k, s, m, n);
}

CompressedOp toeplitz_derivative(int k, const TeichPoint& s, const TrigPoly& f, const torus::TangentVector& v) {
  CompressedOp op{k, s, Eigen::MatrixXcd::Zero(k, k)};
  for (const auto& [mn, c] : f.coeffs()) op.matrix += c * mode_matrix_derivative(k, s, mn.first, mn.second, v);
  return op;
}

CompressedOp toeplitz(int k, const TeichPoint& s, const TrigPoly& f) {
  CompressedOp op{k, s, Eigen::MatrixXcd::Zero(k, k)};
  for (const auto& [mn, c] : f.coeffs()) op.matrix += c * mode_matrix(k, s, mn.first, mn.second);
  return op;
}

CompressedOp toeplitz_quadrature(const theta::ThetaBasis& basis, const TrigPoly& f) {
  const Eigen::MatrixXcd fg = theta::sample(f, basis.N());
  return {basis.k(), basis.sigma(), basis.compress([&](const theta::GridSection& s) { return theta::multiply(fg, s); })};
}

CompressedOp toeplitz_checked(const theta::ThetaBasis& basis, const TrigPoly& f, double tol) {
  CompressedOp closed = toeplitz(basis.k(), basis.sigma(), f);
  const CompressedOp quad = toeplitz_quadrature(basis, f);
  const double scale = std::max(1.0, f.l1_norm());
  const double diff = (closed.matrix - quad.matrix).cwiseAbs().maxCoeff() / scale;
  if (diff > tol) throw ConsistencyError("Toeplitz closed form vs quadrature", diff, tol);
  return closed;
}

double operator_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

std::vector<IdentityCheck> compressed_identities(const theta::ThetaBasis& basis, std::uint64_t seed,
                                                 int sections, double tol) {
  using theta::GridSection;
  const TeichPoint& s = basis.sigma();
  const int k = basis.k(), N = basis.N();
  std::mt19937_64 rng(seed);

  std::vector<GridSection> sec;
  for (int r = 0; r < sections; ++r) sec.push_back(theta::random_section(k, N, rng));

  const VectorField X1 = holomorphic_field(s, TrigPoly::random(rng, 1, false) * 0.5);
  const VectorField X2 = holomorphic_field(s, TrigPoly::random(rng, 1, false) * 0.5);
  const VectorField Xc{TrigPoly::random(rng, 1, false) * 0.5, TrigPoly::random(rng, 1, false) * 0.5};
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const torus::CMat2 B20 = torus::zz_bivector(s, cplx(u(rng), u(rng)));
  torus::CMat2 Bsym;
  {
    const cplx a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng));
    Bsym << a, b, b, c;
  }

  const TrigPoly d1 = torus::divergence(X1, s), d2 = torus::divergence(X2, s);
  const Eigen::MatrixXcd delta1 = theta::sample(d1, N);
  const Eigen::MatrixXcd second = theta::sample(d2 * d1 + apply(X2, d1), N);
  const VectorField Xcb = Xc.conj();
  const Eigen::MatrixXcd delta_cb = theta::sample(torus::divergence(Xcb, s), N);
  const torus::CMat2 Bbar = Bsym.conjugate();

  std::vector<double> r1(sec.size()), r2(sec.size()), r7(sec.size()), rl1(sec.size()), rl2(sec.size());
  parallel_for(sec.size(), [&](std::size_t i) {
    const GridSection& a = sec[i];
    const GridSection& b = sec[(i + 1) % sec.size()];
    const GridSection n1 = theta::covariant_derivative(X1, a);
    r1[i] = theta::norm(basis.projection(n1 + theta::multiply(delta1, a))) / theta::norm(n1);

    const GridSection nn = theta::covariant_derivative(X1, theta::covariant_derivative(X2, a));
    r2[i] = theta::norm(basis.projection(nn - theta::multiply(second, a))) / theta::norm(nn);

    const GridSection xa = theta::covariant_derivative(Xc, a);
    const GridSection xb = theta::covariant_derivative(Xcb, b);
    const cplx lhs = theta::inner_product(xa, b) + theta::inner_product(a, xb) +
                     theta::inner_product(a, theta::multiply(delta_cb, b));
    r7[i] = std::abs(lhs) / (theta::norm(xa) * theta::norm(b) + theta::norm(a) * theta::norm(xb));

    const GridSection lb = theta::laplace_section(B20, a);
    rl1[i] = theta::norm(basis.projection(lb)) / theta::norm(lb);

    const GridSection la = theta::laplace_section(Bsym, a);
    const GridSection lbb = theta::laplace_section(Bbar, b);
    rl2[i] = std::abs(theta::inner_product(la, b) - theta::inner_product(a, lbb)) /
             (theta::norm(la) * theta::norm(b) + theta::norm(a) * theta::norm(lbb));
  });
  auto max_of = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };

  // pi (nabla_X)^* pi = -T_{delta(conj X)} on H^0, with (nabla_X)^* = -nabla_{conj X} - delta(conj X).
  const VectorField X1b = X1.conj();
  const Eigen::MatrixXcd delta1b = theta::sample(torus::divergence(X1b, s), N);
  const Eigen::MatrixXcd adj = basis.compress([&](const GridSection& t) {
    return theta::covariant_derivative(X1b, t) * -1.0 - theta::multiply(delta1b, t);
  });
  const Eigen::MatrixXcd rhs = -basis.compress([&](const GridSection& t) { return theta::multiply(delta1b, t); });
  double scale_star = operator_norm(rhs);
  for (int j = 0; j < k; ++j) scale_star = std::max(scale_star, theta::norm(theta::covariant_derivative(X1, basis.frame(j))));
  const double r_star = operator_norm(adj - rhs) / scale_star;

  // A constant (1,0) field has zero divergence, so pi nabla_X vanishes on H^0.
  const torus::CVec2 wz = torus::d_z(s);
  const Eigen::MatrixXcd cst = basis.compress([&](const GridSection& t) { return theta::covariant_derivative(wz, t); });
  double scale_c = 0.0;
  for (int j = 0; j < k; ++j) scale_c = std::max(scale_c, theta::norm(theta::covariant_derivative(wz, basis.frame(j))));
  const double r_const = operator_norm(cst) / scale_c;

  std::vector<IdentityCheck> out{
      {"first_order_compression", max_of(r1), tol, false},
      {"second_order_compression", max_of(r2), tol, false},
      {"adjoint_of_nabla", max_of(r7), tol, false},
      {"compressed_adjoint", r_star, tol, false},
      {"constant_field_compression", r_const, tol, false},
      {"projected_laplacian_vanishes", max_of(rl1), tol, false},
      {"laplacian_adjoint", max_of(rl2), tol, false},
  };
  for (auto& c : out) c.pass = c.residual < c.tolerance;
  return out;
}

TrigPoly c1_symbol(const TeichPoint& s, const TrigPoly& f, const TrigPoly& g) {
  return torus::bivector_pair(torus::c1_tensor(s), f, g);
}

TrigPoly c1_symbol_modes(const TeichPoint& s, const TrigPoly& f, const TrigPoly& g) {
  const cplx sig = s.sigma();
  TrigPoly out;
  for (const auto& [a, ca] : f.coeffs())
    for (const auto& [b, cb] : g.coeffs()) {
      const cplx dz_a = -(kPi / s.sigma2()) * (std::conj(sig) * static_cast<double>(a.first) - static_cast<double>(a.second));
      const cplx dzb_b = (kPi / s.sigma2()) * (sig * static_cast<double>(b.first) - static_cast<double>(b.second));
      out.add(a.first + b.first, a.second + b.second, -(s.sigma2() / kPi) * dz_a * dzb_b * ca * cb);
    }
  return out.prune();
}

ExpansionTable expansion_residual(const TrigPoly& f, const TrigPoly& g, const TeichPoint& s,
                                  const std::vector<int>& k_list) {
  ExpansionTable t;
  t.rows.resize(k_list.size());
  const TrigPoly fg = f * g;
  const TrigPoly c1 = c1_symbol(s, f, g);
  parallel_for(k_list.size(), [&](std::size_t i) {
    const int k = k_list[i];
    const Eigen::MatrixXcd prod = toeplitz(k, s, f).matrix * toeplitz(k, s, g).matrix;
    const Eigen::MatrixXcd r0 = prod - toeplitz(k, s, fg).matrix;
    const Eigen::MatrixXcd r1 = r0 - toeplitz(k, s, c1).matrix / static_cast<double>(k);
    t.rows[i] = {k, operator_norm(r0), operator_norm(r1)};
  });
  std::vector<double> ks, e0, e1;
  for (const auto& r : t.rows) {
    ks.push_back(r.k);
    e0.push_back(r.e0);
    e1.push_back(r.e1);
  }
  t.fit0 = loglog_slope(ks, e0);
  t.fit1 = loglog_slope(ks, e1);
  return t;
}

StarSeries reparametrize_series(const StarSeries& s, int n) {
  if (s.convention != SeriesConvention::InverseK)
    throw DomainError("reparametrize_series expects a series in 1/k");
  StarSeries out;
  out.convention = SeriesConvention::InverseShiftedK;
  out.n = n;
  const double half_n = 0.5 * n;
  for (std::size_t j = 0; j < s.terms.size(); ++j) {
    if (j == 0) {
      out.terms.push_back(s.terms[0]);
      continue;
    }
    TrigPoly t;
    for (std::size_t l = 1; l <= j; ++l)
      t += s.terms[l] * (binomial(static_cast<int>(j - 1), static_cast<int>(j - l)) *
                         std::pow(half_n, static_cast<double>(j - l)));
    out.terms.push_back(t.prune());
  }
  return out;
}

Eigen::MatrixXcd curve_operator_exact(int k, const TeichPoint& s) {
  Eigen::MatrixXcd m = mode_matrix(k, s, 1, 0);
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (m.data()[i] != cplx(0.0)) m.data()[i] /= std::abs(m.data()[i]);
  return m;
}

GapTable abelian_curve_operator_gap(const std::vector<int>& k_list, const TeichPoint& s) {
  GapTable t;
  const double lambda = torus::laplace_eigenvalue(s, 1, 0);
  for (int k : k_list) {
    if (k < 2) throw DomainError("curve-operator gap needs k >= 2");
    const Eigen::MatrixXcd U = curve_operator_exact(k, s);
    const Eigen::MatrixXcd T = mode_matrix(k, s, 1, 0);
    GapRow r;
    r.k = k;
    r.gap = operator_norm(U - T);
    r.closed_form = 1.0 - std::exp(-lambda / (4.0 * k));
    r.unitarity = (U * U.adjoint() - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff();
    t.max_closed_form_residual = std::max(t.max_closed_form_residual, std::abs(r.gap - r.closed_form));
    t.rows.push_back(r);
  }
  std::vector<double> ks, g;
  for (const auto& r : t.rows) {
    ks.push_back(r.k);
    g.push_back(r.gap);
  }
  t.fit = loglog_slope(ks, g);
  for (std::size_t i = 1; i < g.size(); ++i)
    if (g[i] >= g[i - 1] && ks[i] > ks[i - 1]) t.fit.monotone = false;
  return t;
}

}  // namespace quantlab::toeplitz
