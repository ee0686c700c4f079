#pragma once

// Toeplitz operators T_f = pi f pi as k x k matrices in the orthonormal theta
// frame, M(i, j) = <f theta_hat_j, theta_hat_i>, and the compressed calculus
// built on them.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quantlab/convergence.hpp"
#include "quantlab/theta_sections.hpp"
#include "quantlab/torus_model.hpp"
#include "quantlab/trig_poly.hpp"

namespace quantlab::toeplitz {

using torus::TeichPoint;

struct CompressedOp {
  int k = 0;
  TeichPoint sigma{0.0, 1.0};
  Eigen::MatrixXcd matrix;

  bool hermitian(double tol = 1e-10) const;
};

/// Matrix of T_{e_{m,n}}: nonzero only where i = j - m (mod k), with entry
/// e^{2 pi i n j / k} exp(-pi (n - conj(sigma) m)^2 / (2 k sigma2) - pi i conj(sigma) m^2 / k).
Eigen::MatrixXcd mode_matrix(int k, const TeichPoint& s, int m, int n);

/// V applied to mode_matrix, differentiating the closed form in sigma.
Eigen::MatrixXcd mode_matrix_derivative(int k, const TeichPoint& s, int m, int n, const torus::TangentVector& v);

/// Closed-form Toeplitz matrix; exact for every Fourier mode.
CompressedOp toeplitz(int k, const TeichPoint& s, const TrigPoly& f);
/// V[T_f] in the orthonormal frame from the closed form.
CompressedOp toeplitz_derivative(int k, const TeichPoint& s, const TrigPoly& f, const torus::TangentVector& v);
/// Toeplitz matrix by grid quadrature against the theta frame.
CompressedOp toeplitz_quadrature(const theta::ThetaBasis& basis, const TrigPoly& f);
/// Both paths; throws ConsistencyError when they differ by more than tol.
CompressedOp toeplitz_checked(const theta::ThetaBasis& basis, const TrigPoly& f, double tol = 1e-8);

/// Largest singular value.
double operator_norm(const Eigen::MatrixXcd& m);
inline double operator_norm(const CompressedOp& op) { return operator_norm(op.matrix); }

struct IdentityCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Residuals of the compressed first- and second-order identities, the adjoint
/// formula for nabla_X, pi Delta_B = 0 for (2,0) bivectors and Delta_B^* = Delta_conj(B),
/// evaluated on `sections` random smooth sections drawn with `seed`.
std::vector<IdentityCheck> compressed_identities(const theta::ThetaBasis& basis, std::uint64_t seed,
                                                 int sections = 20, double tol = 1e-6);

/// c^(1)(f, g) = -g(d f, dbar g) as the contraction K^{ab} d_a f d_b g.
TrigPoly c1_symbol(const TeichPoint& s, const TrigPoly& f, const TrigPoly& g);
/// The same coefficient mode by mode from d_z e_mn and d_zbar e_mn.
TrigPoly c1_symbol_modes(const TeichPoint& s, const TrigPoly& f, const TrigPoly& g);

struct ExpansionRow {
  int k = 0;
  double e0 = 0.0;
  double e1 = 0.0;
};

struct ExpansionTable {
  std::vector<ExpansionRow> rows;
  SlopeFit fit0;
  SlopeFit fit1;
};

/// e0(k) = |T_f T_g - T_fg| and e1(k) = |T_f T_g - T_fg - T_{c1(f,g)} / k|.
ExpansionTable expansion_residual(const TrigPoly& f, const TrigPoly& g, const TeichPoint& s,
                                  const std::vector<int>& k_list);

enum class SeriesConvention { InverseK, InverseShiftedK };

/// Coefficients of sum_l c_l t^l with t = 1/k or t = 1/(k + n/2).
struct StarSeries {
  std::vector<TrigPoly> terms;
  SeriesConvention convention = SeriesConvention::InverseK;
  int n = 0;
};

/// Re-expands a 1/k series in 1/(k + n/2): 1/k = t / (1 - n t / 2), so the
/// order-j term is sum_{l=1..j} C(j-1, j-l) (n/2)^{j-l} c_l.
StarSeries reparametrize_series(const StarSeries& s, int n);

/// Unit-modulus band matrix with the phases of T_{e_{1,0}}.
Eigen::MatrixXcd curve_operator_exact(int k, const TeichPoint& s);

struct GapRow {
  int k = 0;
  double gap = 0.0;
  double closed_form = 0.0;
  double unitarity = 0.0;
};

struct GapTable {
  std::vector<GapRow> rows;
  SlopeFit fit;
  double max_closed_form_residual = 0.0;
};

/// |U_exact - T_{e_{1,0}}| against 1 - exp(-lambda_{1,0} / (4k)).
GapTable abelian_curve_operator_gap(const std::vector<int>& k_list, const TeichPoint& s);

}  // namespace quantlab::toeplitz
