#pragma once

// Formal Hitchin connection, E(V) and H(V), the first-order formal
// trivialization P and the induced star product, all on trigonometric
// polynomials. The Ricci-potential and Chern-integer slots are kept in the
// formulas and are zero on the torus.

#include <optional>
#include <string>
#include <vector>

#include "quantlab/convergence.hpp"
#include "quantlab/toeplitz.hpp"
#include "quantlab/torus_model.hpp"
#include "quantlab/trig_poly.hpp"

namespace quantlab::formal {

using torus::TangentVector;
using torus::TeichPoint;

constexpr int kMaxOrder = 2;

/// f = sum_l orders[l] h^l with l <= 2.
class FormalFunction {
public:
  FormalFunction() = default;
  explicit FormalFunction(std::vector<TrigPoly> orders);
  static FormalFunction from(const TrigPoly& f0) { return FormalFunction({f0}); }

  int size() const noexcept { return static_cast<int>(orders_.size()); }
  const TrigPoly& order(int l) const;
  const std::vector<TrigPoly>& orders() const noexcept { return orders_; }
  /// Drops orders above `max_order`.
  FormalFunction truncated(int max_order) const;

  FormalFunction& operator+=(const FormalFunction& o);
  FormalFunction& operator-=(const FormalFunction& o);
  friend FormalFunction operator+(FormalFunction a, const FormalFunction& b) { return a += b; }
  friend FormalFunction operator-(FormalFunction a, const FormalFunction& b) { return a -= b; }

private:
  std::vector<TrigPoly> orders_;
  static const TrigPoly zero_;
};

/// Max coefficient difference over all orders.
double max_diff(const FormalFunction& a, const FormalFunction& b);

/// Geometric data entering the general formulas.
struct RicciData {
  TrigPoly F;          // Ricci potential
  TrigPoly V_F;        // V[F]
  TrigPoly V1_F;       // V'[F]
  int n = 0;           // Chern integer
  VectorField X2_F;    // X''_F
  static RicciData torus() { return {}; }
};

/// f *~ g through order 1 using c~(1) = c(1); the Chern-integer shift enters at order 2 only.
FormalFunction star_tilde(const TeichPoint& s, const FormalFunction& f, const FormalFunction& g);

struct DTerms {
  FormalFunction total;
  /// Coefficient max-norm of each Ricci-potential term; all zero on the torus.
  std::vector<double> ricci_term_sizes;
};

/// D_V f = V[f] - h/4 Delta_G~ f + h/2 nabla_{G~ dF} f + V[F] *~ f - V[F] f
///         - h/2 (Delta_G~(F) *~ f + n V[F] *~ f - Delta_G~(F) f - n V[F] f),
/// truncated at order 2. V[f] defaults to zero (f independent of sigma).
DTerms formal_D_terms(const TangentVector& v, const TeichPoint& s, const FormalFunction& f,
                      const std::optional<FormalFunction>& Vf = std::nullopt,
                      const RicciData& ricci = RicciData::torus());
FormalFunction formal_D(const TangentVector& v, const TeichPoint& s, const FormalFunction& f,
                        const std::optional<FormalFunction>& Vf = std::nullopt);

struct EH {
  TrigPoly E;
  TrigPoly H;
};

/// E(V) f = -1/4 (Delta_G~ f - 2 nabla_{G~ dF} f - 2 Delta_G~(F) f - 2 n V[F] f), H(V) = E(V)(1).
EH E_and_H(const TangentVector& v, const TeichPoint& s, const TrigPoly& f,
           const RicciData& ricci = RicciData::torus());

/// |T_{E(V) f} - (pi o(V)^* f pi + pi f o(V) pi)| / |T_{E(V) f}| at level k,
/// with the right-hand side evaluated on the grid.
double eh_defining_residual(const TangentVector& v, const TeichPoint& s, const TrigPoly& f, int k, int N = 0);

/// P(f) = f - h (Delta f / 4 + i nabla_{X''_F} f).
FormalFunction P_order1(const TeichPoint& s, const TrigPoly& f, const RicciData& ricci = RicciData::torus());
/// P^{-1}(f) = f + h (Delta f / 4 + i nabla_{X''_F} f) through order 1.
FormalFunction P_inverse_order1(const TeichPoint& s, const FormalFunction& f,
                                const RicciData& ricci = RicciData::torus());

/// |V[Delta] f + Delta_G~ f| with V[Delta] f by a central difference of the given step.
double p_flatness_residual(const TangentVector& v, const TeichPoint& s, const TrigPoly& f, double step);

/// Order-1 coefficient of D_V(P(f)), with V[Delta] exact.
TrigPoly p_flatness_order1(const TangentVector& v, const TeichPoint& s, const TrigPoly& f);

struct StarOrder1 {
  FormalFunction product;     // P^{-1}(P f *~ P g) through order 1
  TrigPoly expected;          // -(i/2){f, g}
  TrigPoly intermediate;      // c1 - (f Delta g + g Delta f)/4 + Delta(fg)/4
  double poisson_residual = 0.0;
  double intermediate_residual = 0.0;
  double symmetric_part = 0.0;
};

StarOrder1 star_order1(const TrigPoly& f, const TrigPoly& g, const TeichPoint& s);

/// |D_V(f *~ g) - D_V f *~ g - f *~ D_V g| through order 1, with V[c1] from the
/// closed-form variation of the c1 tensor.
double derivation_residual(const TangentVector& v, const TeichPoint& s, const TrigPoly& f, const TrigPoly& g);

struct FormalFlatnessRow {
  int k = 0;
  double residual = 0.0;
};

struct FormalFlatnessTable {
  std::vector<FormalFlatnessRow> rows;
  SlopeFit fit;
};

/// |nabla^e_V T_f - T_{(D_V f)_1} / k| over k.
FormalFlatnessTable formal_flatness(const TrigPoly& f, const TeichPoint& s, const TangentVector& v,
                                    const std::vector<int>& k_list);

struct EHSweep {
  std::vector<FormalFlatnessRow> rows;
  SlopeFit fit;
};

EHSweep eh_defining_sweep(const TangentVector& v, const TeichPoint& s, const TrigPoly& f,
                          const std::vector<int>& k_list, int grid_factor = 8);

}  // namespace quantlab::formal
