#pragma once

// The Hitchin connection on the bundle of level-k theta spaces over the upper
// half-plane: u(V), the preservation condition, parallel transport, loop
// defects and the induced connection on Toeplitz endomorphisms.

#include <vector>

#include <Eigen/Dense>

#include "quantlab/convergence.hpp"
#include "quantlab/theta_sections.hpp"
#include "quantlab/toeplitz.hpp"
#include "quantlab/torus_model.hpp"

namespace quantlab::hitchin {

using theta::GridSection;
using torus::TangentVector;
using torus::TeichPoint;

/// u(V) = -1/(4k + 2n) { Delta_{G(V)} + 2 nabla_{G(V) dF} + 4k V'[F] }.
/// On the torus n = 0 and F = 0, leaving -Delta_{G(V)} / 4k.
struct ConnectionOperator {
  TeichPoint sigma{0.0, 1.0};
  TangentVector v;
  int k = 1;
  int n = 0;
  TrigPoly ricci_potential;
  torus::CMat2 G = torus::CMat2::Zero();
  cplx g_coeff = 0.0;

  GridSection apply(const GridSection& s) const;
  /// Sup-norm bound of the dF and V'[F] contributions; zero on the torus.
  double ricci_terms() const;
};

ConnectionOperator connection_operator(const TeichPoint& sigma, const TangentVector& v, int k);

/// |(i/2) (nabla^{1,0} s o V[I]) + nabla^{0,1}(u(V) s)| / |s|. Throws
/// PreconditionError when s is not holomorphic to 1e-7.
double eqcond_residual(const TeichPoint& sigma, const TangentVector& v, int k, const GridSection& s);

struct TransportLogEntry {
  double t = 0.0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double holo_residual = 0.0;
  double drift = 0.0;
};

struct TransportResult {
  std::vector<TeichPoint> path;
  int k = 0;
  int N = 0;
  int steps = 0;
  /// Column j holds the transported start frame vector j in the end frame.
  Eigen::MatrixXcd matrix;
  double max_holo_residual = 0.0;
  double max_drift = 0.0;
  double step_change = 0.0;
  std::vector<TransportLogEntry> log;
};

/// Integrates ds/dt = u(sigma(t))(sigma'(t)) s with classical RK4 along the
/// polyline, re-projecting onto the theta space after each step. The step
/// count per segment doubles until two successive runs stay holomorphic to 1e-4
/// and their endpoint matrices differ by less than step_tol (at most 2^14 steps
/// in total). N = 0 means 16k.
TransportResult parallel_transport(const std::vector<TeichPoint>& path, int k, double step_tol = 1e-6, int N = 0,
                                   int initial_steps = 4);

struct LoopDefect {
  double defect = 0.0;
  double deviation = 0.0;  // |M - Id|
  cplx scalar = 0.0;       // tr M / k
  TransportResult transport;
};

/// |M - (tr M / k) Id| / |tr M / k| for the transport M around a closed loop.
LoopDefect loop_defect(const std::vector<TeichPoint>& loop, int k, double step_tol = 1e-6, int N = 0);

/// Square of the given side centred at `centre`, traversed counterclockwise.
std::vector<TeichPoint> square_loop(const TeichPoint& centre, double side);

enum class EndoMethod { Analytic, CentralDifference };

/// nabla^e_V T_f in the orthonormal theta frame. The frame connection is scalar,
/// so this is the sigma-derivative of the closed-form matrix, taken analytically
/// or by a fourth-order central difference of step h.
toeplitz::CompressedOp endo_derivative(const TrigPoly& f, const TeichPoint& sigma, const TangentVector& v, int k,
                                       EndoMethod method = EndoMethod::Analytic, double h = 1e-3);

/// Independent grid evaluation of pi (V[pi f pi] + [pi f pi, u(V)]) on the theta
/// frame, with V[pi f pi] by central differences of step h. Real V only.
Eigen::MatrixXcd endo_derivative_grid(const TrigPoly& f, const TeichPoint& sigma, cplx dsigma, int k,
                                      double h = 1e-4, int N = 0);

struct FlatnessRow {
  int k = 0;
  double norm = 0.0;
};

struct FlatnessTable {
  std::vector<FlatnessRow> rows;
  SlopeFit fit;
};

FlatnessTable toeplitz_flatness(const TrigPoly& f, const TeichPoint& sigma, const TangentVector& v,
                                const std::vector<int>& k_list);

}  // namespace quantlab::hitchin
