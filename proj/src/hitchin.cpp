#include "quantlab/hitchin.hpp"

#include <algorithm>
#include <cmath>

#include "quantlab/errors.hpp"
#include "quantlab/parallel.hpp"

namespace quantlab::hitchin {

namespace {

constexpr int kMaxTransportSteps = 1 << 14;

TeichPoint lerp(const TeichPoint& a, const TeichPoint& b, double t) {
  return {a.sigma1() + t * (b.sigma1() - a.sigma1()), a.sigma2() + t * (b.sigma2() - a.sigma2())};
}

std::vector<GridSection> apply_all(const ConnectionOperator& u, const std::vector<GridSection>& s) {
  std::vector<GridSection> out(s.size());
  parallel_for(s.size(), [&](std::size_t j) { out[j] = u.apply(s[j]); });
  return out;
}

std::vector<GridSection> axpy(const std::vector<GridSection>& s, double a, const std::vector<GridSection>& d) {
  std::vector<GridSection> out = s;
  for (std::size_t j = 0; j < s.size(); ++j) out[j] += d[j] * a;
  return out;
}

TransportResult transport_fixed(const std::vector<TeichPoint>& path, int k, int N, int steps_per_segment) {
  TransportResult r;
  r.path = path;
  r.k = k;
  r.N = N;
  theta::ThetaBasis basis(k, path.front(), 1e-16, N);
  std::vector<GridSection> S;
  for (int j = 0; j < k; ++j) S.push_back(basis.frame(j));
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Identity(k, k);
  r.log.push_back({0.0, path.front().sigma1(), path.front().sigma2(), 0.0, 0.0});

  const double dt = 1.0 / steps_per_segment;
  for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
    const TeichPoint& a = path[seg];
    const TeichPoint& b = path[seg + 1];
    const torus::TangentVector v = torus::TangentVector::real(b.sigma() - a.sigma());
    if (v.holo == cplx(0.0)) continue;
    for (int step = 0; step < steps_per_segment; ++step) {
      const double t0 = step * dt;
      const ConnectionOperator u0 = connection_operator(lerp(a, b, t0), v, k);
      const ConnectionOperator uh = connection_operator(lerp(a, b, t0 + 0.5 * dt), v, k);
      const ConnectionOperator u1 = connection_operator(lerp(a, b, t0 + dt), v, k);
      const auto k1 = apply_all(u0, S);
      const auto k2 = apply_all(uh, axpy(S, 0.5 * dt, k1));
      const auto k3 = apply_all(uh, axpy(S, 0.5 * dt, k2));
      const auto k4 = apply_all(u1, axpy(S, dt, k3));
      for (int j = 0; j < k; ++j) S[j] += (k1[j] + k2[j] * 2.0 + k3[j] * 2.0 + k4[j]) * (dt / 6.0);

      const TeichPoint sn = lerp(a, b, t0 + dt);
      basis = theta::ThetaBasis(k, sn, 1e-16, N);
      double holo = 0.0, drift = 0.0;
      for (int j = 0; j < k; ++j) {
        holo = std::max(holo, theta::holomorphicity_residual(sn, S[j]));
        C.col(j) = basis.project(S[j]);
        const GridSection p = basis.embed(C.col(j));
        drift = std::max(drift, theta::norm(S[j] - p) / theta::norm(S[j]));
        S[j] = p;
      }
      r.max_holo_residual = std::max(r.max_holo_residual, holo);
      r.max_drift = std::max(r.max_drift, drift);
      ++r.steps;
      r.log.push_back({static_cast<double>(seg) + t0 + dt, sn.sigma1(), sn.sigma2(), holo, drift});
    }
  }
  r.matrix = C;
  return r;
}

}  // namespace

GridSection ConnectionOperator::apply(const GridSection& s) const {
  GridSection out = theta::laplace_section(G, s);
  if (!ricci_potential.is_zero()) {
    out += theta::covariant_derivative(torus::bivector_apply(G, ricci_potential), s) * 2.0;
    // V'[F] vanishes: the potential does not depend on sigma here.
  }
  return out * (-1.0 / (4.0 * k + 2.0 * n));
}

double ConnectionOperator::ricci_terms() const {
  const VectorField gdf = torus::bivector_apply(G, ricci_potential);
  return gdf.x.l1_norm() + gdf.y.l1_norm();
}

ConnectionOperator connection_operator(const TeichPoint& sigma, const TangentVector& v, int k) {
  if (k < 1) throw DomainError("level k must be >= 1");
  ConnectionOperator u;
  u.sigma = sigma;
  u.v = v;
  u.k = k;
  const torus::GBivectors b = torus::g_bivectors(sigma, v);
  u.G = b.g;
  u.g_coeff = b.g_coeff;
  return u;
}

double eqcond_residual(const TeichPoint& sigma, const TangentVector& v, int k, const GridSection& s) {
  if (s.k != k) throw ShapeError("section level does not match k");
  const double sn = theta::norm(s);
  if (sn == 0.0) return 0.0;
  const double holo = theta::holomorphicity_residual(sigma, s);
  if (holo > 1e-7) throw PreconditionError("eqcond needs a holomorphic section; residual " + std::to_string(holo));

  const torus::CMat2 vi = torus::variation_I(sigma, v);
  const auto [hol, anti] = theta::dolbeault_split(sigma, s);
  (void)anti;
  const GridSection us = connection_operator(sigma, v, k).apply(s);
  const auto [uhol, uanti] = theta::dolbeault_split(sigma, us);
  (void)uhol;
  const cplx half_i(0.0, 0.5);
  // (alpha o V[I])_b = alpha_a V[I]^a_b.
  theta::OneFormSection res{(hol.x * vi(0, 0) + hol.y * vi(1, 0)) * half_i + uanti.x,
                            (hol.x * vi(0, 1) + hol.y * vi(1, 1)) * half_i + uanti.y};
  return theta::norm(res) / sn;
}

TransportResult parallel_transport(const std::vector<TeichPoint>& path, int k, double step_tol, int N,
                                   int initial_steps) {
  if (path.empty()) throw DomainError("transport path is empty");
  if (!(step_tol > 0.0)) throw DomainError("step tolerance must be positive");
  for (const auto& p : path)
    if (p.sigma2() <= 0.05) throw DomainError("transport path must stay in sigma2 > 0.05");
  if (N == 0) N = 16 * k;
  const int segments = std::max<int>(1, static_cast<int>(path.size()) - 1);

  int m = std::max(1, initial_steps);
  TransportResult prev = transport_fixed(path, k, N, m);
  if (path.size() == 1) return prev;
  while (true) {
    m *= 2;
    if (m * segments > kMaxTransportSteps)
      throw AccuracyError("transport did not converge within " + std::to_string(kMaxTransportSteps) + " steps");
    TransportResult cur = transport_fixed(path, k, N, m);
    cur.step_change = (cur.matrix - prev.matrix).cwiseAbs().maxCoeff();
    // Explicit steps are unstable on the stiff high grid modes until dt is small
    // enough; such a run leaves the theta space and counts as unconverged.
    const bool stable = cur.max_holo_residual <= 1e-4 && prev.max_holo_residual <= 1e-4;
    if (stable && cur.step_change < step_tol) return cur;
    if (2 * m * segments > kMaxTransportSteps && !stable)
      throw AccuracyError("transported sections left the theta space: holomorphicity residual " +
                          std::to_string(cur.max_holo_residual));
    prev = std::move(cur);
  }
}

LoopDefect loop_defect(const std::vector<TeichPoint>& loop, int k, double step_tol, int N) {
  if (loop.size() < 2 || std::abs(loop.front().sigma() - loop.back().sigma()) > 1e-14)
    throw DomainError("loop must be a closed polyline");
  LoopDefect d;
  d.transport = parallel_transport(loop, k, step_tol, N);
  const Eigen::MatrixXcd& M = d.transport.matrix;
  d.scalar = M.trace() / static_cast<double>(k);
  if (std::abs(d.scalar) < 1e-8) throw AccuracyError("loop holonomy has degenerate trace");
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(k, k);
  d.defect = toeplitz::operator_norm(M - d.scalar * id) / std::abs(d.scalar);
  d.deviation = toeplitz::operator_norm(M - id);
  return d;
}

std::vector<TeichPoint> square_loop(const TeichPoint& centre, double side) {
  const double h = 0.5 * side, a = centre.sigma1(), b = centre.sigma2();
  return {{a - h, b - h}, {a + h, b - h}, {a + h, b + h}, {a - h, b + h}, {a - h, b - h}};
}

toeplitz::CompressedOp endo_derivative(const TrigPoly& f, const TeichPoint& sigma, const TangentVector& v, int k,
                                       EndoMethod method, double h) {
  if (method == EndoMethod::Analytic) return toeplitz::toeplitz_derivative(k, sigma, f, v);
  if (sigma.sigma2() <= 2.0 * h) throw DomainError("finite-difference step too large for sigma2");
  auto partial = [&](double e1, double e2) {
    auto at = [&](double t) {
      return toeplitz::toeplitz(k, TeichPoint(sigma.sigma1() + t * e1, sigma.sigma2() + t * e2), f).matrix;
    };
    return Eigen::MatrixXcd((at(-2 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2 * h)) / (12.0 * h));
  };
  toeplitz::CompressedOp op{k, sigma, v.d1() * partial(1, 0) + v.d2() * partial(0, 1)};
  return op;
}

Eigen::MatrixXcd endo_derivative_grid(const TrigPoly& f, const TeichPoint& sigma, cplx dsigma, int k, double h,
                                      int N) {
  if (N == 0) N = 16 * k;
  const TeichPoint sp = TeichPoint::from_complex(sigma.sigma() + h * dsigma);
  const TeichPoint sm = TeichPoint::from_complex(sigma.sigma() - h * dsigma);
  const theta::ThetaBasis b0(k, sigma, 1e-16, N), bp(k, sp, 1e-16, N), bm(k, sm, 1e-16, N);
  const Eigen::MatrixXcd fg = theta::sample(f, N);
  auto tf = [&](const theta::ThetaBasis& b, const GridSection& s) {
    return b.projection(theta::multiply(fg, b.projection(s)));
  };
  const ConnectionOperator u = connection_operator(sigma, TangentVector::real(dsigma), k);
  Eigen::MatrixXcd out(k, k);
  for (int j = 0; j < k; ++j) {
    const GridSection& t = b0.frame(j);
    const GridSection d = (tf(bp, t) - tf(bm, t)) * (1.0 / (2.0 * h)) + tf(b0, u.apply(t)) - u.apply(tf(b0, t));
    out.col(j) = b0.project(d);
  }
  return out;
}

FlatnessTable toeplitz_flatness(const TrigPoly& f, const TeichPoint& sigma, const TangentVector& v,
                                const std::vector<int>& k_list) {
  FlatnessTable t;
  t.rows.resize(k_list.size());
  parallel_for(k_list.size(), [&](std::size_t i) {
    t.rows[i] = {k_list[i], toeplitz::operator_norm(endo_derivative(f, sigma, v, k_list[i]))};
  });
  std::vector<double> ks, ns;
  for (const auto& r : t.rows) {
    ks.push_back(r.k);
    ns.push_back(r.norm);
  }
  t.fit = loglog_slope(ks, ns, 1e-12);
  return t;
}

}  // namespace quantlab::hitchin
