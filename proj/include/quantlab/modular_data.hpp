#pragma once

// SU(n) level-k modular data: label sets, Weyl characters at Kac points,
// the S-matrix, curve-operator spectra and Verlinde dimensions.

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace quantlab::modular {

using cplx = std::complex<double>;

/// Young diagram with at most n-1 rows; trailing zero rows are dropped.
class Label {
public:
  Label() = default;
  explicit Label(std::vector<int> rows);

  const std::vector<int>& rows() const noexcept { return rows_; }
  int row(std::size_t i) const noexcept { return i < rows_.size() ? rows_[i] : 0; }
  std::size_t length() const noexcept { return rows_.size(); }
  int boxes() const noexcept;
  bool is_trivial() const noexcept { return rows_.empty(); }

  /// "()" for the trivial label, "(2,1)" otherwise.
  std::string to_string() const;
  /// Accepts "", "()", "0", "2,1", "(2,1)", "2 1".
  static Label parse(const std::string& text);

  friend bool operator==(const Label&, const Label&) = default;

private:
  std::vector<int> rows_;
};

/// Graded lexicographic order: fewer boxes first, then larger rows first.
bool graded_less(const Label& a, const Label& b);

bool is_member(const Label& label, int n, int k);

/// All labels of Lambda_k^(n) in graded lexicographic order; trivial label first.
std::vector<Label> build_label_set(int n, int k);

/// Dual (conjugate) representation: complement in the n x lambda_1 box, rotated.
Label dual(const Label& label, int n, int k);

/// Weyl dimension of the SU(n) irrep.
double dimension(const Label& label, int n);

/// Eigenphases of a diagonal SU(n) element; angles sum to zero.
struct CartanPoint {
  std::vector<double> angles;
};

/// The Kac point -2 pi (mu + rho) / (k + n), projected to trace zero.
CartanPoint kac_point(const Label& mu, int n, int k);

enum class CharacterMethod { Alternant, JacobiTrudi };

struct CharacterValue {
  cplx value;
  CharacterMethod method;
  double condition;  // n! / |Vandermonde|
};

/// Schur polynomial s_lambda(e^{i theta_1}, ..., e^{i theta_n}).
/// Ratio of alternants, switching to Jacobi-Trudi once the Vandermonde
/// condition estimate exceeds 1e8.
CharacterValue character(const Label& label, const CartanPoint& point);

cplx schur_alternant(const Label& label, const std::vector<cplx>& x);
cplx schur_jacobi_trudi(const Label& label, const std::vector<cplx>& x);

/// S_{lambda mu} / S_{0 mu}, the character of lambda at the Kac point of mu.
cplx char_ratio(const Label& lambda, const Label& mu, int n, int k);

struct ModularData {
  int n = 0;
  int k = 0;
  std::vector<Label> labels;
  Eigen::MatrixXcd S;
  Eigen::MatrixXcd R;

  std::size_t index_of(const Label& label) const;
  /// P(i, j) = 1 iff labels[i] is the dual of labels[j].
  Eigen::MatrixXd dual_permutation() const;
};

struct SMatrixResiduals {
  double unitarity = 0.0;    // max |S S^dag - I|
  double symmetry = 0.0;     // max |S - S^T|
  double dual_square = 0.0;  // max |S^2 - P_dual|
  double min_first_row = 0.0;
};

SMatrixResiduals residuals(const ModularData& data);

/// Builds R from char_ratio and S by normalising each column so that
/// S_{0 mu} > 0. Throws ConsistencyError if unitarity, symmetry or
/// S^2 = dual permutation fail at `tolerance`.
ModularData s_matrix(int n, int k, double tolerance = 1e-10);

struct SpectrumEntry {
  cplx eigenvalue;
  Label label;
};

/// Eigenvalues of the curve operator Z(gamma, lambda): {R_{lambda mu}}_mu.
std::vector<SpectrumEntry> curve_spectrum(const Label& lambda, int n, int k);
std::vector<SpectrumEntry> curve_spectrum(const Label& lambda, const ModularData& data);

struct VerlindeResult {
  double value = 0.0;
  long long nearest = 0;
  double deviation = 0.0;
};

/// sum_mu S_{0 mu}^{2-2g} prod_i R_{lambda_i mu}; throws ConsistencyError
/// when the result is not within `tolerance` of a non-negative integer.
VerlindeResult verlinde_dim(int n, int k, int genus, const std::vector<Label>& boundary,
                            double tolerance = 1e-6);
VerlindeResult verlinde_dim(const ModularData& data, int genus,
                            const std::vector<Label>& boundary, double tolerance = 1e-6);

}  // namespace quantlab::modular
