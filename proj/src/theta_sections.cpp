#include "quantlab/theta_sections.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "quantlab/errors.hpp"
#include "quantlab/parallel.hpp"
#include "spectral.hpp"

namespace quantlab::theta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr int kTailBudget = 4096;

void require_same(const GridSection& a, const GridSection& b) {
  if (a.k != b.k || a.N != b.N) throw ShapeError("grid sections differ in level or resolution");
}

// Multiplies column j (y = j/N) of m by e^{i sign 2 pi k x y} row-wise.
Eigen::MatrixXcd gauge_twist(const Eigen::MatrixXcd& m, int k, double sign) {
  const int N = static_cast<int>(m.rows());
  Eigen::MatrixXcd out(N, N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      out(i, j) = m(i, j) * std::polar(1.0, sign * kTwoPi * k * (static_cast<double>(i) / N) * j / N);
  return out;
}

Eigen::MatrixXcd dx_spectral(const GridSection& s) {
  const int N = s.N;
  const Eigen::MatrixXcd u = gauge_twist(s.values, s.k, -1.0);
  const Eigen::MatrixXcd ux = spectral::derivative(u, spectral::Axis::X);
  Eigen::MatrixXcd w(N, N);
  for (int j = 0; j < N; ++j) w.col(j) = ux.col(j) + cplx(0.0, kTwoPi * s.k * j / N) * u.col(j);
  return gauge_twist(w, s.k, 1.0);
}

Eigen::MatrixXcd dx_fd4(const GridSection& s) {
  const int N = s.N;
  const double h = 1.0 / N;
  auto at = [&](int i, int j) -> cplx {
    const double y = static_cast<double>(j) / N;
    if (i >= N) return std::polar(1.0, kTwoPi * s.k * y) * s.values(i - N, j);
    if (i < 0) return std::polar(1.0, -kTwoPi * s.k * y) * s.values(i + N, j);
    return s.values(i, j);
  };
  Eigen::MatrixXcd d(N, N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      d(i, j) = (at(i - 2, j) - 8.0 * at(i - 1, j) + 8.0 * at(i + 1, j) - at(i + 2, j)) / (12.0 * h);
  return d;
}

Eigen::MatrixXcd dy_fd4(const GridSection& s) {
  const int N = s.N;
  const double h = 1.0 / N;
  auto at = [&](int i, int j) { return s.values(i, ((j % N) + N) % N); };
  Eigen::MatrixXcd d(N, N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      d(i, j) = (at(i, j - 2) - 8.0 * at(i, j - 1) + 8.0 * at(i, j + 1) - at(i, j + 2)) / (12.0 * h);
  return d;
}

}  // namespace

GridSection::GridSection(int k_, int N_) : k(k_), N(N_), values(Eigen::MatrixXcd::Zero(N_, N_)) {}

GridSection::GridSection(int k_, int N_, Eigen::MatrixXcd v) : k(k_), N(N_), values(std::move(v)) {
  if (values.rows() != N || values.cols() != N) throw ShapeError("grid values must be N x N");
}

GridSection& GridSection::operator+=(const GridSection& o) {
  require_same(*this, o);
  values += o.values;
  return *this;
}

GridSection& GridSection::operator-=(const GridSection& o) {
  require_same(*this, o);
  values -= o.values;
  return *this;
}

GridSection& GridSection::operator*=(cplx c) {
  values *= c;
  return *this;
}

Eigen::MatrixXcd sample(const TrigPoly& f, int N) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(N, N);
  for (const auto& [mn, c] : f.coeffs()) {
    Eigen::VectorXcd ex(N), ey(N);
    for (int i = 0; i < N; ++i) {
      ex(i) = std::polar(1.0, kTwoPi * mn.first * i / N);
      ey(i) = std::polar(1.0, kTwoPi * mn.second * i / N);
    }
    out += c * ex * ey.transpose();
  }
  return out;
}

GridSection multiply(const TrigPoly& f, const GridSection& s) { return multiply(sample(f, s.N), s); }

GridSection multiply(const Eigen::MatrixXcd& f, const GridSection& s) {
  if (f.rows() != s.N || f.cols() != s.N) throw ShapeError("function grid does not match section grid");
  return GridSection(s.k, s.N, f.cwiseProduct(s.values));
}

cplx inner_product(const GridSection& s1, const GridSection& s2) {
  require_same(s1, s2);
  const cplx sum = (s1.values.array() * s2.values.array().conjugate()).sum();
  return kTwoPi * sum / (static_cast<double>(s1.N) * s1.N);
}

double norm(const GridSection& s) {
  return std::sqrt(kTwoPi * s.values.squaredNorm() / (static_cast<double>(s.N) * s.N));
}

double norm(const OneFormSection& a) { return std::hypot(norm(a.x), norm(a.y)); }

GridSection nabla_x(const GridSection& s, DerivativeScheme scheme) {
  return GridSection(s.k, s.N, scheme == DerivativeScheme::Spectral ? dx_spectral(s) : dx_fd4(s));
}

GridSection nabla_y(const GridSection& s, DerivativeScheme scheme) {
  Eigen::MatrixXcd d = scheme == DerivativeScheme::Spectral
                           ? spectral::derivative(s.values, spectral::Axis::Y)
                           : dy_fd4(s);
  for (int i = 0; i < s.N; ++i) d.row(i) -= cplx(0.0, kTwoPi * s.k * i / s.N) * s.values.row(i);
  return GridSection(s.k, s.N, std::move(d));
}

GridSection covariant_derivative(const VectorField& X, const GridSection& s, DerivativeScheme scheme) {
  return multiply(X.x, nabla_x(s, scheme)) + multiply(X.y, nabla_y(s, scheme));
}

GridSection covariant_derivative(const torus::CVec2& X, const GridSection& s, DerivativeScheme scheme) {
  GridSection out = nabla_x(s, scheme) * X(0);
  if (X(1) != cplx(0.0)) out += nabla_y(s, scheme) * X(1);
  return out;
}

std::pair<OneFormSection, OneFormSection> dolbeault_split(const TeichPoint& sigma, const GridSection& s,
                                                          DerivativeScheme scheme) {
  const GridSection ax = nabla_x(s, scheme), ay = nabla_y(s, scheme);
  const torus::Mat2 I = torus::complex_structure(sigma);
  // (alpha o I)_b = alpha_a I^a_b.
  const GridSection ix = ax * I(0, 0) + ay * I(1, 0);
  const GridSection iy = ax * I(0, 1) + ay * I(1, 1);
  const cplx half_i(0.0, 0.5);
  OneFormSection hol{ax * 0.5 - ix * half_i, ay * 0.5 - iy * half_i};
  OneFormSection anti{ax * 0.5 + ix * half_i, ay * 0.5 + iy * half_i};
  return {std::move(hol), std::move(anti)};
}

double holomorphicity_residual(const TeichPoint& sigma, const GridSection& s) {
  const double n = norm(s);
  if (n == 0.0) return 0.0;
  return norm(dolbeault_split(sigma, s).second) / n;
}

GridSection laplace_section(const CMat2& B, const GridSection& s, DerivativeScheme scheme) {
  const GridSection sx = nabla_x(s, scheme), sy = nabla_y(s, scheme);
  GridSection out = nabla_x(sx, scheme) * B(0, 0) + nabla_y(sy, scheme) * B(1, 1);
  const cplx off = B(0, 1) + B(1, 0);
  if (off != cplx(0.0)) out += nabla_x(sy, scheme) * (0.5 * off) + nabla_y(sx, scheme) * (0.5 * off);
  return out;
}

GridSection random_section(int k, int N, std::mt19937_64& rng, int packets) {
  if (k < 1 || N < 8) throw DomainError("random_section needs k >= 1 and N >= 8");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> p(-2, 2);
  struct Packet {
    cplx c;
    double t;
    int p;
  };
  std::vector<Packet> ps;
  for (int r = 0; r < packets; ++r) {
    const cplx c(2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0);
    ps.push_back({c, u(rng), p(rng)});
  }
  const double beta = kPi * k;
  const int L = static_cast<int>(std::ceil(std::sqrt(37.0 / beta))) + 2;
  GridSection s(k, N);
  for (int j = 0; j < N; ++j) {
    const double y = static_cast<double>(j) / N;
    for (int i = 0; i < N; ++i) {
      const double x = static_cast<double>(i) / N;
      cplx v = 0.0;
      for (int n = -L; n <= L; ++n) {
        const double t = y - n;
        cplx w = 0.0;
        for (const Packet& q : ps) w += q.c * std::exp(-beta * (t - q.t) * (t - q.t)) * std::polar(1.0, kTwoPi * q.p * x);
        v += std::polar(1.0, kTwoPi * k * x * t) * w;
      }
      s.values(i, j) = v;
    }
  }
  return s;
}

void write_csv(std::ostream& out, const GridSection& s) {
  out.precision(17);
  out << "i,j,re,im\n";
  for (int i = 0; i < s.N; ++i)
    for (int j = 0; j < s.N; ++j)
      out << i << ',' << j << ',' << s.values(i, j).real() << ',' << s.values(i, j).imag() << '\n';
}

GridSection read_csv(std::istream& in, int k) {
  std::string line;
  std::getline(in, line);
  std::vector<std::tuple<int, int, cplx>> rows;
  int N = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    int i, j;
    double re, im;
    if (!(ls >> i >> j >> re >> im)) throw ShapeError("malformed grid CSV line: " + line);
    rows.emplace_back(i, j, cplx(re, im));
    N = std::max({N, i + 1, j + 1});
  }
  if (rows.size() != static_cast<std::size_t>(N) * N) throw ShapeError("grid CSV is not a full N x N grid");
  GridSection s(k, N);
  for (const auto& [i, j, v] : rows) s.values(i, j) = v;
  return s;
}

int theta_tail(int k, double sigma2, double tail_tol) {
  if (!(tail_tol > 0.0) || tail_tol >= 1.0) throw DomainError("tail tolerance must lie in (0, 1)");
  const double L = std::ceil(std::sqrt(-std::log(tail_tol) / (kPi * k * sigma2)));
  if (!(L <= kTailBudget))
    throw TruncationError("theta lattice sum needs more than " + std::to_string(kTailBudget) +
                          " terms; sigma2 is too small");
  return static_cast<int>(L);
}

ThetaBasis::ThetaBasis(int k, const TeichPoint& sigma, double tail_tol, int N)
    : k_(k), N_(N == 0 ? 16 * k : N), sigma_(sigma) {
  if (k < 1) throw DomainError("level k must be >= 1");
  if (N_ < 8 * k) throw DomainError("grid resolution must satisfy N >= 8k");
  tail_ = theta_tail(k, sigma.sigma2(), tail_tol);

  theta_.resize(static_cast<std::size_t>(k));
  parallel_for(static_cast<std::size_t>(k), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    GridSection s(k, N_);
    const cplx q = cplx(0.0, kPi * k) * sigma.sigma();
    for (int c = 0; c < N_; ++c) {
      const double y = static_cast<double>(c) / N_;
      for (int n = -tail_ - 1; n <= tail_ + 1; ++n) {
        const double t = y - n - static_cast<double>(j) / k;
        const cplx a = std::exp(q * t * t);
        for (int r = 0; r < N_; ++r) s.values(r, c) += a * std::polar(1.0, kTwoPi * k * (static_cast<double>(r) / N_) * t);
      }
    }
    theta_[jj] = std::move(s);
  });

  gram_.resize(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) gram_(i, j) = inner_product(theta_[i], theta_[j]);

  std::vector<double> holo(static_cast<std::size_t>(k));
  parallel_for(static_cast<std::size_t>(k), [&](std::size_t j) { holo[j] = holomorphicity_residual(sigma, theta_[j]); });
  holo_residual_ = *std::max_element(holo.begin(), holo.end());

  const double c = gram_closed_form();
  for (int i = 0; i < k; ++i) {
    closed_residual_ = std::max(closed_residual_, std::abs(gram_(i, i) - c) / c);
    for (int j = 0; j < k; ++j)
      if (i != j) offdiag_ = std::max(offdiag_, std::abs(gram_(i, j)));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram_);
  const Eigen::VectorXd ev = eig.eigenvalues();
  eig_ratio_ = ev.minCoeff() / ev.maxCoeff();

  if (holo_residual_ >= 1e-8) throw ConsistencyError("theta holomorphicity", holo_residual_, 1e-8);
  if (offdiag_ >= 1e-10) throw ConsistencyError("theta Gram off-diagonal", offdiag_, 1e-10);
  if (closed_residual_ >= 1e-8) throw ConsistencyError("theta Gram closed form", closed_residual_, 1e-8);
  if (!(eig_ratio_ > 1e-8)) throw ConsistencyError("theta basis independence", eig_ratio_, 1e-8);

  // Orthonormal frame from the principal inverse square root of the Gram matrix.
  const Eigen::MatrixXcd root =
      eig.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() * eig.eigenvectors().adjoint();
  frame_.assign(static_cast<std::size_t>(k), GridSection(k, N_));
  // frame_j = sum_i theta_i root(i, j); the Gram matrix is indexed <theta_i, theta_j>,
  // so its transpose is the matrix of <theta_j, theta_i> used for the conjugation.
  const Eigen::MatrixXcd r = root.transpose();
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i)
      if (r(i, j) != cplx(0.0)) frame_[j].values += r(i, j) * theta_[i].values;
}

double ThetaBasis::gram_closed_form() const noexcept { return kTwoPi / std::sqrt(2.0 * k_ * sigma_.sigma2()); }

cplx ThetaBasis::evaluate(int j, double x, double y) const {
  const cplx q = cplx(0.0, kPi * k_) * sigma_.sigma();
  cplx v = 0.0;
  const int n0 = static_cast<int>(std::floor(y));
  for (int n = n0 - tail_ - 1; n <= n0 + tail_ + 1; ++n) {
    const double t = y - n - static_cast<double>(j) / k_;
    v += std::exp(q * t * t + cplx(0.0, kTwoPi * k_ * x * t));
  }
  return v;
}

Eigen::VectorXcd ThetaBasis::project(const GridSection& s) const {
  Eigen::VectorXcd c(k_);
  for (int i = 0; i < k_; ++i) c(i) = inner_product(s, frame_[i]);
  return c;
}

GridSection ThetaBasis::embed(const Eigen::VectorXcd& coeffs) const {
  if (coeffs.size() != k_) throw ShapeError("coefficient vector length must equal k");
  GridSection s(k_, N_);
  for (int i = 0; i < k_; ++i) s.values += coeffs(i) * frame_[i].values;
  return s;
}

GridSection ThetaBasis::projection(const GridSection& s) const { return embed(project(s)); }

}  // namespace quantlab::theta
