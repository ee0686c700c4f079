#pragma once

// Sections of L^k over the torus in the gauge A = -2 pi i k x dy, with
// s(x+1, y) = e^{2 pi i k y} s(x, y) and s(x, y+1) = s(x, y). Grid values are
// stored at (i/N, j/N) with i along x (rows) and j along y (columns).

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "quantlab/torus_model.hpp"
#include "quantlab/trig_poly.hpp"

namespace quantlab::theta {

using torus::CMat2;
using torus::TeichPoint;

struct GridSection {
  int k = 0;
  int N = 0;
  Eigen::MatrixXcd values;

  GridSection() = default;
  GridSection(int k, int N);
  GridSection(int k, int N, Eigen::MatrixXcd values);

  GridSection& operator+=(const GridSection& o);
  GridSection& operator-=(const GridSection& o);
  GridSection& operator*=(cplx c);
  friend GridSection operator+(GridSection a, const GridSection& b) { return a += b; }
  friend GridSection operator-(GridSection a, const GridSection& b) { return a -= b; }
  friend GridSection operator*(GridSection a, cplx c) { return a *= c; }
  friend GridSection operator*(cplx c, GridSection a) { return a *= c; }
};

/// Grid samples of a function.
Eigen::MatrixXcd sample(const TrigPoly& f, int N);
/// Pointwise product f s.
GridSection multiply(const TrigPoly& f, const GridSection& s);
GridSection multiply(const Eigen::MatrixXcd& f, const GridSection& s);

/// (2 pi / N^2) sum s1 conj(s2), the trapezoid rule for the Liouville integral.
cplx inner_product(const GridSection& s1, const GridSection& s2);
double norm(const GridSection& s);

enum class DerivativeScheme { Spectral, FiniteDifference4 };

/// Covariant derivatives nabla_x = d_x and nabla_y = d_y - 2 pi i k x.
GridSection nabla_x(const GridSection& s, DerivativeScheme scheme = DerivativeScheme::Spectral);
GridSection nabla_y(const GridSection& s, DerivativeScheme scheme = DerivativeScheme::Spectral);

/// nabla_X s = X[s] + A(X) s.
GridSection covariant_derivative(const VectorField& X, const GridSection& s,
                                 DerivativeScheme scheme = DerivativeScheme::Spectral);
GridSection covariant_derivative(const torus::CVec2& X, const GridSection& s,
                                 DerivativeScheme scheme = DerivativeScheme::Spectral);

/// Section-valued one-form alpha = x dx + y dy.
struct OneFormSection {
  GridSection x;
  GridSection y;
};
double norm(const OneFormSection& a);

/// (nabla^{1,0} s, nabla^{0,1} s) with nabla^{0,1} = (1 + i I) nabla / 2 acting on one-forms.
std::pair<OneFormSection, OneFormSection> dolbeault_split(const TeichPoint& sigma, const GridSection& s,
                                                          DerivativeScheme scheme = DerivativeScheme::Spectral);
/// |nabla^{0,1} s| / |s|.
double holomorphicity_residual(const TeichPoint& sigma, const GridSection& s);

/// Delta_B s = B^{ab} nabla_a nabla_b s for a constant symmetric bivector B.
GridSection laplace_section(const CMat2& B, const GridSection& s,
                            DerivativeScheme scheme = DerivativeScheme::Spectral);

/// Smooth non-holomorphic section built from Gaussian wave packets.
GridSection random_section(int k, int N, std::mt19937_64& rng, int packets = 4);

void write_csv(std::ostream& out, const GridSection& s);
GridSection read_csv(std::istream& in, int k);

/// Level-k theta sections theta_j, j = 0..k-1, holomorphic for I_sigma.
class ThetaBasis {
public:
  /// Builds the basis on an N x N grid (N = 0 means 16k) and verifies the
  /// holomorphicity, Gram-diagonality, independence and closed-form Gram
  /// invariants; throws ConsistencyError naming the failed invariant.
  ThetaBasis(int k, const TeichPoint& sigma, double tail_tol = 1e-16, int N = 0);

  int k() const noexcept { return k_; }
  int N() const noexcept { return N_; }
  const TeichPoint& sigma() const noexcept { return sigma_; }
  int tail() const noexcept { return tail_; }

  /// theta_j sampled on the grid.
  const GridSection& theta(int j) const { return theta_.at(static_cast<std::size_t>(j)); }
  /// Orthonormal frame theta_j scaled by the inverse square root of the Gram diagonal.
  const GridSection& frame(int j) const { return frame_.at(static_cast<std::size_t>(j)); }
  /// gram(i, j) = <theta_i, theta_j> by quadrature.
  const Eigen::MatrixXcd& gram() const noexcept { return gram_; }
  /// 2 pi / sqrt(2 k sigma2).
  double gram_closed_form() const noexcept;

  /// Pointwise lattice-sum value of theta_j.
  cplx evaluate(int j, double x, double y) const;

  double max_holomorphicity_residual() const noexcept { return holo_residual_; }
  double max_offdiag_gram() const noexcept { return offdiag_; }
  double gram_closed_form_residual() const noexcept { return closed_residual_; }
  double min_over_max_gram_eigenvalue() const noexcept { return eig_ratio_; }

  /// Coefficients <s, theta_hat_i> in the orthonormal frame.
  Eigen::VectorXcd project(const GridSection& s) const;
  GridSection embed(const Eigen::VectorXcd& coeffs) const;
  /// pi(s) as a grid section.
  GridSection projection(const GridSection& s) const;
  /// Matrix of <op(theta_hat_j), theta_hat_i>.
  template <class Op>
  Eigen::MatrixXcd compress(Op&& op) const {
    Eigen::MatrixXcd m(k_, k_);
    for (int j = 0; j < k_; ++j) m.col(j) = project(op(frame(j)));
    return m;
  }

private:
  int k_;
  int N_;
  TeichPoint sigma_;
  int tail_;
  std::vector<GridSection> theta_;
  std::vector<GridSection> frame_;
  Eigen::MatrixXcd gram_;
  double holo_residual_ = 0.0;
  double offdiag_ = 0.0;
  double closed_residual_ = 0.0;
  double eig_ratio_ = 0.0;
};

/// Tail length L such that the lattice terms |n| > L + 1 are below tail_tol
/// relative to the leading term; throws TruncationError past the term budget.
int theta_tail(int k, double sigma2, double tail_tol);

}  // namespace quantlab::theta
