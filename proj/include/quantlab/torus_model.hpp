#pragma once

// The flat torus R^2/Z^2 with omega = 2 pi dx^dy and complex coordinate
// z = x + sigma y, sigma in the upper half-plane. Tensors are constant 2x2
// arrays in the (d/dx, d/dy) frame; upper indices first.

#include <complex>

#include <Eigen/Dense>

#include "quantlab/trig_poly.hpp"

namespace quantlab::torus {

using Mat2 = Eigen::Matrix2d;
using CMat2 = Eigen::Matrix2cd;
using CVec2 = Eigen::Vector2cd;

class TeichPoint {
public:
  TeichPoint(double sigma1, double sigma2);
  static TeichPoint from_complex(cplx sigma) { return {sigma.real(), sigma.imag()}; }

  double sigma1() const noexcept { return s1_; }
  double sigma2() const noexcept { return s2_; }
  cplx sigma() const noexcept { return {s1_, s2_}; }
  double abs2() const noexcept { return s1_ * s1_ + s2_ * s2_; }

private:
  double s1_;
  double s2_;
};

/// Complexified tangent vector a d/dsigma + b d/dsigmabar. A real tangent
/// vector with increment dsigma has a = dsigma, b = conj(dsigma).
struct TangentVector {
  cplx holo = 0.0;
  cplx antiholo = 0.0;

  static TangentVector real(cplx dsigma) { return {dsigma, std::conj(dsigma)}; }
  static TangentVector d_sigma1() { return real(1.0); }
  static TangentVector d_sigma2() { return real(cplx(0, 1)); }
  static TangentVector holomorphic(cplx a) { return {a, 0.0}; }
  static TangentVector antiholomorphic(cplx b) { return {0.0, b}; }

  /// Components along d/dsigma1 and d/dsigma2 (complex for non-real V).
  cplx d1() const { return 0.5 * (holo + antiholo); }
  cplx d2() const { return cplx(0, 0.5) * (antiholo - holo); }
  TangentVector holomorphic_part() const { return {holo, 0.0}; }
  TangentVector antiholomorphic_part() const { return {0.0, antiholo}; }
  TangentVector scaled(cplx c) const { return {c * holo, c * antiholo}; }
};

enum class TensorKind { ComplexStructure, Metric, InverseMetric, Bivector, Vector };

struct ConstTensor {
  TensorKind kind;
  CMat2 c;
};

/// Omega_ab = omega(d_a, d_b).
Mat2 omega_matrix();
Mat2 omega_inverse();

Mat2 complex_structure(const TeichPoint& s);
/// g(X, Y) = omega(X, I Y).
Mat2 metric(const TeichPoint& s);
Mat2 inverse_metric(const TeichPoint& s);

/// dz = dx + sigma dy as a row of components.
CVec2 dz(const TeichPoint& s);
/// d/dz = (i / 2 sigma2)(conj(sigma) d/dx - d/dy).
CVec2 d_z(const TeichPoint& s);
CVec2 d_zbar(const TeichPoint& s);

/// Closed-form partials of I and g^{-1} along sigma1 and sigma2.
Mat2 dI_dsigma1(const TeichPoint& s);
Mat2 dI_dsigma2(const TeichPoint& s);
Mat2 dginv_dsigma1(const TeichPoint& s);
Mat2 dginv_dsigma2(const TeichPoint& s);

/// V[I] from the closed form, cross-checked against central differences
/// (step 1e-5, tolerance 1e-8) and the anticommutation V[I] I + I V[I] = 0.
CMat2 variation_I(const TeichPoint& s, const TangentVector& v);
/// V[I] from central differences only.
CMat2 variation_I_fd(const TeichPoint& s, const TangentVector& v, double step = 1e-5);
CMat2 variation_ginv(const TeichPoint& s, const TangentVector& v);

struct GBivectors {
  CMat2 g_tilde;     // V[I] Omega^{-1}, symmetric
  cplx g_coeff;      // G(V) = g_coeff d/dz (x) d/dz
  CMat2 g;           // (2,0) part in the (d/dx, d/dy) frame
  CMat2 g_bar_part;  // (0,2) part; the conjugate of G(V) when V is real
  double identity_residual;  // |G~ + V[g^{-1}]|_max
  double mixed_residual;     // size of the (1,1) part, zero in theory
};

/// Throws ConsistencyError if G~ is not symmetric or differs from -V[g^{-1}]
/// by more than 1e-10.
GBivectors g_bivectors(const TeichPoint& s, const TangentVector& v);

/// c d/dz (x) d/dz in the real frame.
CMat2 zz_bivector(const TeichPoint& s, cplx c);

/// delta(X) = Lambda d(i_X omega); independent of sigma.
TrigPoly divergence(const VectorField& X, const TeichPoint& s);
/// Delta_B f = delta(B df) for constant B.
TrigPoly laplace_bivector(const CMat2& B, const TrigPoly& f);
/// Laplace-Beltrami operator Delta_{g^{-1}}.
TrigPoly laplace(const TeichPoint& s, const TrigPoly& f);
/// lambda_mn with Delta e_mn = -lambda_mn e_mn.
double laplace_eigenvalue(const TeichPoint& s, int m, int n);
/// B(df, dg).
TrigPoly bivector_pair(const CMat2& B, const TrigPoly& f, const TrigPoly& g);
/// B df as a vector field.
VectorField bivector_apply(const CMat2& B, const TrigPoly& f);

/// X_f with omega(., X_f) = df, so that X_f[g] = {f, g}.
VectorField hamiltonian_field(const TrigPoly& f);
/// {f, g} = (1/2 pi)(f_x g_y - f_y g_x).
TrigPoly poisson(const TrigPoly& f, const TrigPoly& g);

/// K with c^(1)(f, g) = K^{ab} d_a f d_b g.
CMat2 c1_tensor(const TeichPoint& s);
/// V[K] from closed-form partials of K.
CMat2 c1_tensor_variation(const TeichPoint& s, const TangentVector& v);

}  // namespace quantlab::torus
