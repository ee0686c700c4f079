#pragma once

// Trigonometric polynomials on R^2/Z^2, f = sum a_mn e^{2 pi i (m x + n y)},
// and vector fields whose components are trigonometric polynomials.

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>

namespace quantlab {

using cplx = std::complex<double>;
using Mode = std::pair<int, int>;

class TrigPoly {
public:
  using Coeffs = std::map<Mode, cplx>;

  TrigPoly() = default;
  explicit TrigPoly(Coeffs coeffs);

  static TrigPoly constant(cplx c);
  /// c * e_{m,n}.
  static TrigPoly mode(int m, int n, cplx c = 1.0);
  static TrigPoly cos_x(int m = 1);
  static TrigPoly cos_y(int n = 1);
  static TrigPoly sin_x(int m = 1);
  static TrigPoly sin_y(int n = 1);
  /// Coefficients uniform in the unit square for all |m|,|n| <= degree; Hermitian
  /// symmetrised when `real` is set.
  static TrigPoly random(std::mt19937_64& rng, int degree, bool real);

  const Coeffs& coeffs() const noexcept { return coeffs_; }
  cplx coeff(int m, int n) const;
  void add(int m, int n, cplx c);
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Largest |m| or |n| in the support.
  int degree() const noexcept;
  /// Max modulus of the Fourier coefficients.
  double max_coeff() const noexcept;
  /// sum |a_mn|, an upper bound for sup |f|.
  double l1_norm() const noexcept;
  bool is_real(double tol = 1e-14) const;

  cplx operator()(double x, double y) const;

  TrigPoly dx() const;
  TrigPoly dy() const;
  TrigPoly conj() const;
  /// Drops coefficients with modulus below tol.
  TrigPoly& prune(double tol = 1e-15);

  TrigPoly& operator+=(const TrigPoly& o);
  TrigPoly& operator-=(const TrigPoly& o);
  TrigPoly& operator*=(cplx c);

  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator-(TrigPoly a) { return a *= -1.0; }
  friend TrigPoly operator*(TrigPoly a, cplx c) { return a *= c; }
  friend TrigPoly operator*(cplx c, TrigPoly a) { return a *= c; }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

  std::string to_string() const;

private:
  Coeffs coeffs_;
};

/// max |a_mn - b_mn|.
double max_diff(const TrigPoly& a, const TrigPoly& b);

/// Vector field X = x d/dx + y d/dy with trigonometric-polynomial components.
struct VectorField {
  TrigPoly x;
  TrigPoly y;

  static VectorField constant(cplx ax, cplx ay) {
    return {TrigPoly::constant(ax), TrigPoly::constant(ay)};
  }
  VectorField conj() const { return {x.conj(), y.conj()}; }
};

/// X[f].
TrigPoly apply(const VectorField& X, const TrigPoly& f);

}  // namespace quantlab
