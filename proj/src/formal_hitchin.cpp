#include "quantlab/formal_hitchin.hpp"

#include <algorithm>
#include <cmath>

#include "quantlab/errors.hpp"
#include "quantlab/hitchin.hpp"
#include "quantlab/parallel.hpp"
#include "quantlab/theta_sections.hpp"

namespace quantlab::formal {

const TrigPoly FormalFunction::zero_{};

namespace {

const cplx kI(0.0, 1.0);

TeichPoint shifted(const TeichPoint& s, const TangentVector& v, double t) {
  return {s.sigma1() + t * v.d1().real(), s.sigma2() + t * v.d2().real()};
}

}  // namespace

FormalFunction::FormalFunction(std::vector<TrigPoly> orders) : orders_(std::move(orders)) {
  if (static_cast<int>(orders_.size()) > kMaxOrder + 1)
    throw TruncationError("formal functions are limited to order " + std::to_string(kMaxOrder));
}

const TrigPoly& FormalFunction::order(int l) const {
  return l >= 0 && l < size() ? orders_[static_cast<std::size_t>(l)] : zero_;
}

FormalFunction FormalFunction::truncated(int max_order) const {
  std::vector<TrigPoly> o(orders_.begin(), orders_.begin() + std::min(size(), max_order + 1));
  return FormalFunction(std::move(o));
}

FormalFunction& FormalFunction::operator+=(const FormalFunction& o) {
  if (o.size() > size()) orders_.resize(static_cast<std::size_t>(o.size()));
  for (int l = 0; l < o.size(); ++l) orders_[l] += o.order(l);
  return *this;
}

FormalFunction& FormalFunction::operator-=(const FormalFunction& o) {
  if (o.size() > size()) orders_.resize(static_cast<std::size_t>(o.size()));
  for (int l = 0; l < o.size(); ++l) orders_[l] -= o.order(l);
  return *this;
}

double max_diff(const FormalFunction& a, const FormalFunction& b) {
  double d = 0.0;
  for (int l = 0; l < std::max(a.size(), b.size()); ++l) d = std::max(d, quantlab::max_diff(a.order(l), b.order(l)));
  return d;
}

FormalFunction star_tilde(const TeichPoint& s, const FormalFunction& f, const FormalFunction& g) {
  const TrigPoly o0 = f.order(0) * g.order(0);
  const TrigPoly o1 = f.order(0) * g.order(1) + f.order(1) * g.order(0) + toeplitz::c1_symbol(s, f.order(0), g.order(0));
  return FormalFunction({o0, o1});
}

DTerms formal_D_terms(const TangentVector& v, const TeichPoint& s, const FormalFunction& f,
                      const std::optional<FormalFunction>& Vf, const RicciData& r) {
  const torus::CMat2 gt = torus::g_bivectors(s, v).g_tilde;
  const FormalFunction VF = FormalFunction::from(r.V_F);
  const TrigPoly lapF = torus::laplace_bivector(gt, r.F);
  const VectorField gdF = torus::bivector_apply(gt, r.F);
  const double nn = r.n;

  std::vector<TrigPoly> out(static_cast<std::size_t>(kMaxOrder + 1));
  // V[f] and the h-shifted second-order part.
  for (int l = 0; l <= kMaxOrder; ++l) {
    if (Vf) out[l] += Vf->order(l);
    if (l >= 1) out[l] += torus::laplace_bivector(gt, f.order(l - 1)) * -0.25;
  }
  // Ricci-potential terms.
  std::vector<TrigPoly> t_grad(out.size()), t_star(out.size()), t_bracket(out.size());
  const FormalFunction vstar = star_tilde(s, VF, f);
  const FormalFunction lstar = star_tilde(s, FormalFunction::from(lapF), f);
  for (int l = 0; l <= kMaxOrder; ++l) {
    if (l >= 1) t_grad[l] = apply(gdF, f.order(l - 1)) * 0.5;
    t_star[l] = vstar.order(l) - r.V_F * f.order(l);
    if (l >= 1)
      t_bracket[l] = (lstar.order(l - 1) + vstar.order(l - 1) * nn - lapF * f.order(l - 1) -
                      r.V_F * f.order(l - 1) * nn) * -0.5;
  }
  DTerms d;
  double g = 0, st = 0, br = 0;
  for (int l = 0; l <= kMaxOrder; ++l) {
    out[l] += t_grad[l] + t_star[l] + t_bracket[l];
    out[l].prune();
    g = std::max(g, t_grad[l].max_coeff());
    st = std::max(st, t_star[l].max_coeff());
    br = std::max(br, t_bracket[l].max_coeff());
  }
  d.total = FormalFunction(std::move(out));
  d.ricci_term_sizes = {g, st, br, lapF.max_coeff(), r.V_F.max_coeff()};
  return d;
}

FormalFunction formal_D(const TangentVector& v, const TeichPoint& s, const FormalFunction& f,
                        const std::optional<FormalFunction>& Vf) {
  return formal_D_terms(v, s, f, Vf).total;
}

EH E_and_H(const TangentVector& v, const TeichPoint& s, const TrigPoly& f, const RicciData& r) {
  const torus::CMat2 gt = torus::g_bivectors(s, v).g_tilde;
  auto E = [&](const TrigPoly& h) {
    return (torus::laplace_bivector(gt, h) - apply(torus::bivector_apply(gt, r.F), h) * 2.0 -
            torus::laplace_bivector(gt, r.F) * h * 2.0 - r.V_F * h * (2.0 * r.n)) *
           -0.25;
  };
  return {E(f), E(TrigPoly::constant(1.0))};
}

double eh_defining_residual(const TangentVector& v, const TeichPoint& s, const TrigPoly& f, int k, int N) {
  const theta::ThetaBasis basis(k, s, 1e-16, N);
  const torus::CMat2 G = torus::g_bivectors(s, v).g;
  const torus::CMat2 Gbar = G.conjugate();
  const Eigen::MatrixXcd fg = theta::sample(f, basis.N());
  // o(V) = -Delta_G / 4 and o(V)^* = -Delta_conj(G) / 4.
  const Eigen::MatrixXcd rhs =
      basis.compress([&](const theta::GridSection& t) {
        return theta::laplace_section(Gbar, theta::multiply(fg, t)) * -0.25;
      }) +
      basis.compress([&](const theta::GridSection& t) {
        return theta::multiply(fg, theta::laplace_section(G, t)) * -0.25;
      });
  const Eigen::MatrixXcd lhs = toeplitz::toeplitz(k, s, E_and_H(v, s, f).E).matrix;
  const double scale = toeplitz::operator_norm(lhs);
  return toeplitz::operator_norm(lhs - rhs) / (scale > 0.0 ? scale : 1.0);
}

FormalFunction P_order1(const TeichPoint& s, const TrigPoly& f, const RicciData& r) {
  return FormalFunction({f, (torus::laplace(s, f) * 0.25 + apply(r.X2_F, f) * kI) * -1.0});
}

FormalFunction P_inverse_order1(const TeichPoint& s, const FormalFunction& f, const RicciData& r) {
  return FormalFunction({f.order(0), f.order(1) + torus::laplace(s, f.order(0)) * 0.25 + apply(r.X2_F, f.order(0)) * kI});
}

double p_flatness_residual(const TangentVector& v, const TeichPoint& s, const TrigPoly& f, double step) {
  const TrigPoly vd = (torus::laplace(shifted(s, v, step), f) - torus::laplace(shifted(s, v, -step), f)) *
                      (1.0 / (2.0 * step));
  const torus::CMat2 gt = torus::g_bivectors(s, v).g_tilde;
  return (vd + torus::laplace_bivector(gt, f)).max_coeff();
}

TrigPoly p_flatness_order1(const TangentVector& v, const TeichPoint& s, const TrigPoly& f) {
  const FormalFunction p = P_order1(s, f);
  const FormalFunction vp({TrigPoly{}, torus::laplace_bivector(torus::variation_ginv(s, v), f) * -0.25});
  return formal_D(v, s, p, vp).order(1);
}

StarOrder1 star_order1(const TrigPoly& f, const TrigPoly& g, const TeichPoint& s) {
  StarOrder1 r;
  r.product = P_inverse_order1(s, star_tilde(s, P_order1(s, f), P_order1(s, g)));
  r.expected = torus::poisson(f, g) * cplx(0.0, -0.5);
  r.intermediate = toeplitz::c1_symbol(s, f, g) - (f * torus::laplace(s, g) + g * torus::laplace(s, f)) * 0.25 +
                   torus::laplace(s, f * g) * 0.25;
  r.poisson_residual = quantlab::max_diff(r.product.order(1), r.expected);
  r.intermediate_residual = quantlab::max_diff(r.product.order(1), r.intermediate);
  const FormalFunction swapped = P_inverse_order1(s, star_tilde(s, P_order1(s, g), P_order1(s, f)));
  r.symmetric_part = ((r.product.order(1) + swapped.order(1)) * 0.5).max_coeff();
  return r;
}

double derivation_residual(const TangentVector& v, const TeichPoint& s, const TrigPoly& f, const TrigPoly& g) {
  const FormalFunction F = FormalFunction::from(f), G = FormalFunction::from(g);
  const FormalFunction fg = star_tilde(s, F, G);
  const FormalFunction vfg({TrigPoly{}, torus::bivector_pair(torus::c1_tensor_variation(s, v), f, g)});
  const FormalFunction lhs = formal_D(v, s, fg, vfg).truncated(1);
  const FormalFunction rhs = star_tilde(s, formal_D(v, s, F), G) + star_tilde(s, F, formal_D(v, s, G));
  return max_diff(lhs, rhs.truncated(1));
}

FormalFlatnessTable formal_flatness(const TrigPoly& f, const TeichPoint& s, const TangentVector& v,
                                    const std::vector<int>& k_list) {
  FormalFlatnessTable t;
  t.rows.resize(k_list.size());
  const TrigPoly d1 = formal_D(v, s, FormalFunction::from(f)).order(1);
  parallel_for(k_list.size(), [&](std::size_t i) {
    const int k = k_list[i];
    const Eigen::MatrixXcd e = hitchin::endo_derivative(f, s, v, k).matrix;
    const Eigen::MatrixXcd a = toeplitz::toeplitz(k, s, d1).matrix / static_cast<double>(k);
    const double scale = toeplitz::operator_norm(e);
    t.rows[i] = {k, toeplitz::operator_norm(e - a) / (scale > 0.0 ? scale : 1.0)};
  });
  std::vector<double> ks, rs;
  for (const auto& r : t.rows) {
    ks.push_back(r.k);
    rs.push_back(r.residual);
  }
  t.fit = loglog_slope(ks, rs, 1e-12);
  return t;
}

EHSweep eh_defining_sweep(const TangentVector& v, const TeichPoint& s, const TrigPoly& f,
                          const std::vector<int>& k_list, int grid_factor) {
  EHSweep t;
  for (int k : k_list) t.rows.push_back({k, eh_defining_residual(v, s, f, k, grid_factor * k)});
  std::vector<double> ks, rs;
  for (const auto& r : t.rows) {
    ks.push_back(r.k);
    rs.push_back(r.residual);
  }
  t.fit = loglog_slope(ks, rs, 1e-10);
  return t;
}

}  // namespace quantlab::formal
