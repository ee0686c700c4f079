#include "quantlab/torus_model.hpp"

#include <cmath>
#include <numbers>

#include "quantlab/errors.hpp"

namespace quantlab::torus {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double max_abs(const CMat2& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TeichPoint::TeichPoint(double sigma1, double sigma2) : s1_(sigma1), s2_(sigma2) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma1) || !std::isfinite(sigma2))
    throw DomainError("sigma2 must be positive, got " + std::to_string(sigma2));
}

Mat2 omega_matrix() {
  Mat2 o;
  o << 0.0, kTwoPi, -kTwoPi, 0.0;
  return o;
}

Mat2 omega_inverse() {
  Mat2 o;
  o << 0.0, -1.0 / kTwoPi, 1.0 / kTwoPi, 0.0;
  return o;
}

Mat2 complex_structure(const TeichPoint& s) {
  const double a = s.sigma1(), b = s.sigma2();
  Mat2 I;
  I << -a, -s.abs2(), 1.0, a;
  return I / b;
}

Mat2 metric(const TeichPoint& s) { return omega_matrix() * complex_structure(s); }

Mat2 inverse_metric(const TeichPoint& s) {
  const double a = s.sigma1();
  Mat2 g;
  g << s.abs2(), -a, -a, 1.0;
  return g / (kTwoPi * s.sigma2());
}

CVec2 dz(const TeichPoint& s) { return {1.0, s.sigma()}; }

CVec2 d_z(const TeichPoint& s) {
  const cplx pre(0.0, 0.5 / s.sigma2());
  return {pre * std::conj(s.sigma()), -pre};
}

CVec2 d_zbar(const TeichPoint& s) { return d_z(s).conjugate(); }

Mat2 dI_dsigma1(const TeichPoint& s) {
  Mat2 d;
  d << -1.0, -2.0 * s.sigma1(), 0.0, 1.0;
  return d / s.sigma2();
}

Mat2 dI_dsigma2(const TeichPoint& s) {
  const double a = s.sigma1(), b = s.sigma2(), b2 = b * b;
  Mat2 d;
  d << a / b2, s.abs2() / b2 - 2.0, -1.0 / b2, -a / b2;
  return d;
}

Mat2 dginv_dsigma1(const TeichPoint& s) {
  Mat2 d;
  d << 2.0 * s.sigma1(), -1.0, -1.0, 0.0;
  return d / (kTwoPi * s.sigma2());
}

Mat2 dginv_dsigma2(const TeichPoint& s) {
  const double b = s.sigma2();
  Mat2 e;
  e << 2.0 * b, 0.0, 0.0, 0.0;
  return -inverse_metric(s) / b + e / (kTwoPi * b);
}

CMat2 variation_I_fd(const TeichPoint& s, const TangentVector& v, double step) {
  auto central = [&](double e1, double e2) {
    const TeichPoint p(s.sigma1() + step * e1, s.sigma2() + step * e2);
    const TeichPoint m(s.sigma1() - step * e1, s.sigma2() - step * e2);
    return Mat2((complex_structure(p) - complex_structure(m)) / (2.0 * step));
  };
  return v.d1() * central(1, 0).cast<cplx>() + v.d2() * central(0, 1).cast<cplx>();
}

CMat2 variation_I(const TeichPoint& s, const TangentVector& v) {
  const CMat2 vi = v.d1() * dI_dsigma1(s).cast<cplx>() + v.d2() * dI_dsigma2(s).cast<cplx>();
  const double scale = std::max(1.0, std::abs(v.d1()) + std::abs(v.d2()));
  const CMat2 I = complex_structure(s).cast<cplx>();
  const double anti = max_abs(vi * I + I * vi);
  if (anti > 1e-12 * scale * (1.0 + max_abs(I))) throw ConsistencyError("V[I] anticommutes with I", anti, 1e-12);
  const double fd = max_abs(vi - variation_I_fd(s, v));
  const double tol = 1e-8 * scale * (1.0 + max_abs(I) / (s.sigma2() * s.sigma2()));
  if (fd > tol) throw ConsistencyError("V[I] closed form vs finite differences", fd, tol);
  return vi;
}

CMat2 variation_ginv(const TeichPoint& s, const TangentVector& v) {
  return v.d1() * dginv_dsigma1(s).cast<cplx>() + v.d2() * dginv_dsigma2(s).cast<cplx>();
}

CMat2 zz_bivector(const TeichPoint& s, cplx c) {
  const CVec2 w = d_z(s);
  return c * w * w.transpose();
}

GBivectors g_bivectors(const TeichPoint& s, const TangentVector& v) {
  GBivectors b;
  b.g_tilde = variation_I(s, v) * omega_inverse().cast<cplx>();
  const double scale = std::max(1e-300, max_abs(b.g_tilde));
  const double asym = max_abs(b.g_tilde - b.g_tilde.transpose());
  if (asym > 1e-10 * std::max(1.0, scale)) throw ConsistencyError("G~(V) symmetric", asym, 1e-10);
  b.identity_residual = max_abs(b.g_tilde + variation_ginv(s, v));
  if (b.identity_residual > 1e-10 * std::max(1.0, scale))
    throw ConsistencyError("G~(V) = -V[g^{-1}]", b.identity_residual, 1e-10);

  const CVec2 a = dz(s), abar = a.conjugate();
  b.g_coeff = a.transpose() * b.g_tilde * a;
  const cplx cbar = abar.transpose() * b.g_tilde * abar;
  const cplx mixed = a.transpose() * b.g_tilde * abar;
  b.g = zz_bivector(s, b.g_coeff);
  const CVec2 wb = d_zbar(s);
  b.g_bar_part = cbar * wb * wb.transpose();
  b.mixed_residual = std::abs(mixed);
  return b;
}

TrigPoly divergence(const VectorField& X, const TeichPoint&) {
  // i_X omega = alpha_x dx + alpha_y dy; d alpha = (d_x alpha_y - d_y alpha_x) dx^dy;
  // Lambda divides by the coefficient of omega.
  const Mat2 om = omega_matrix();
  const TrigPoly alpha_x = X.y * om(1, 0);
  const TrigPoly alpha_y = X.x * om(0, 1);
  return (alpha_y.dx() - alpha_x.dy()) * (1.0 / om(0, 1));
}

TrigPoly laplace_bivector(const CMat2& B, const TrigPoly& f) {
  TrigPoly out;
  for (const auto& [mn, c] : f.coeffs()) {
    const double m = mn.first, n = mn.second;
    const cplx q = B(0, 0) * m * m + (B(0, 1) + B(1, 0)) * m * n + B(1, 1) * n * n;
    out.add(mn.first, mn.second, -4.0 * kPi * kPi * q * c);
  }
  return out.prune();
}

TrigPoly laplace(const TeichPoint& s, const TrigPoly& f) {
  return laplace_bivector(inverse_metric(s).cast<cplx>(), f);
}

double laplace_eigenvalue(const TeichPoint& s, int m, int n) {
  return kTwoPi / s.sigma2() * std::norm(static_cast<double>(m) * s.sigma() - static_cast<double>(n));
}

TrigPoly bivector_pair(const CMat2& B, const TrigPoly& f, const TrigPoly& g) {
  const TrigPoly fx = f.dx(), fy = f.dy(), gx = g.dx(), gy = g.dy();
  return B(0, 0) * (fx * gx) + B(0, 1) * (fx * gy) + B(1, 0) * (fy * gx) + B(1, 1) * (fy * gy);
}

VectorField bivector_apply(const CMat2& B, const TrigPoly& f) {
  const TrigPoly fx = f.dx(), fy = f.dy();
  return {B(0, 0) * fx + B(0, 1) * fy, B(1, 0) * fx + B(1, 1) * fy};
}

VectorField hamiltonian_field(const TrigPoly& f) {
  const Mat2 oi = omega_inverse();
  const TrigPoly fx = f.dx(), fy = f.dy();
  return {oi(0, 0) * fx + oi(0, 1) * fy, oi(1, 0) * fx + oi(1, 1) * fy};
}

TrigPoly poisson(const TrigPoly& f, const TrigPoly& g) {
  return (f.dx() * g.dy() - f.dy() * g.dx()) * (1.0 / kTwoPi);
}

CMat2 c1_tensor(const TeichPoint& s) {
  const cplx sig = s.sigma();
  CMat2 a;
  a << s.abs2(), -std::conj(sig), -sig, 1.0;
  return -a / (4.0 * kPi * s.sigma2());
}

CMat2 c1_tensor_variation(const TeichPoint& s, const TangentVector& v) {
  const double p = 1.0 / (4.0 * kPi * s.sigma2());
  const double a = s.sigma1(), b = s.sigma2();
  CMat2 A, d1A, d2A;
  A << s.abs2(), cplx(-a, b), cplx(-a, -b), 1.0;
  d1A << 2.0 * a, -1.0, -1.0, 0.0;
  d2A << 2.0 * b, cplx(0, 1), cplx(0, -1), 0.0;
  const CMat2 dK1 = -p * d1A;
  const CMat2 dK2 = (p / b) * A - p * d2A;
  return v.d1() * dK1 + v.d2() * dK2;
}

}  // namespace quantlab::torus
