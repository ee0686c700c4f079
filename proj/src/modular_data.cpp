#include "quantlab/modular_data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "quantlab/errors.hpp"
#include "quantlab/parallel.hpp"

namespace quantlab::modular {

namespace {

constexpr double kPi = std::numbers::pi;

void check_params(int n, int k) {
  if (n < 2) throw DomainError("rank n must be >= 2, got " + std::to_string(n));
  if (k < 0) throw DomainError("level k must be >= 0, got " + std::to_string(k));
}

void require_member(const Label& label, int n, int k) {
  if (!is_member(label, n, k))
    throw DomainError("label " + label.to_string() + " is not in Lambda_" + std::to_string(k) +
                      "^(" + std::to_string(n) + ")");
}

void enumerate(int n, int k, std::vector<int>& prefix, std::vector<Label>& out) {
  out.emplace_back(prefix);
  if (static_cast<int>(prefix.size()) == n - 1) return;
  const int cap = prefix.empty() ? k : prefix.back();
  for (int r = 1; r <= cap; ++r) {
    prefix.push_back(r);
    enumerate(n, k, prefix, out);
    prefix.pop_back();
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

cplx vandermonde(const std::vector<cplx>& x) {
  cplx v = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) v *= x[i] - x[j];
  return v;
}

}  // namespace

Label::Label(std::vector<int> rows) : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] < 0) throw DomainError("Young diagram rows must be non-negative");
    if (i > 0 && rows_[i] > rows_[i - 1]) throw DomainError("Young diagram rows must be non-increasing");
  }
  while (!rows_.empty() && rows_.back() == 0) rows_.pop_back();
}

int Label::boxes() const noexcept {
  int total = 0;
  for (int r : rows_) total += r;
  return total;
}

std::string Label::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(rows_[i]);
  }
  return s + ")";
}

Label Label::parse(const std::string& text) {
  std::string cleaned;
  for (char c : text) {
    if (c == '(' || c == ')' || c == '[' || c == ']') continue;
    cleaned += (c == ',' ? ' ' : c);
  }
  std::istringstream in(cleaned);
  std::vector<int> rows;
  std::string token;
  while (in >> token) {
    if (!std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw DomainError("cannot parse label '" + text + "'");
    rows.push_back(std::stoi(token));
  }
  return Label(std::move(rows));
}

bool graded_less(const Label& a, const Label& b) {
  if (a.boxes() != b.boxes()) return a.boxes() < b.boxes();
  const std::size_t len = std::max(a.length(), b.length());
  for (std::size_t i = 0; i < len; ++i)
    if (a.row(i) != b.row(i)) return a.row(i) > b.row(i);
  return false;
}

bool is_member(const Label& label, int n, int k) {
  if (n < 2 || k < 0) return false;
  if (static_cast<int>(label.length()) > n - 1) return false;
  return label.is_trivial() || label.row(0) <= k;
}

std::vector<Label> build_label_set(int n, int k) {
  check_params(n, k);
  std::vector<Label> out;
  std::vector<int> prefix;
  enumerate(n, k, prefix, out);
  std::stable_sort(out.begin(), out.end(), graded_less);
  return out;
}

Label dual(const Label& label, int n, int k) {
  check_params(n, k);
  require_member(label, n, k);
  std::vector<int> rows(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n - 1; ++i) rows[i] = label.row(0) - label.row(static_cast<std::size_t>(n - 1 - i));
  return Label(std::move(rows));
}

double dimension(const Label& label, int n) {
  double d = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      d *= static_cast<double>(label.row(i) - label.row(j) + j - i) / (j - i);
  return d;
}

CartanPoint kac_point(const Label& mu, int n, int k) {
  check_params(n, k);
  require_member(mu, n, k);
  std::vector<double> shifted(static_cast<std::size_t>(n));
  double mean = 0.0;
  for (int j = 0; j < n; ++j) {
    shifted[j] = mu.row(j) + (n - 1 - j);
    mean += shifted[j];
  }
  mean /= n;
  CartanPoint p;
  p.angles.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) p.angles[j] = -2.0 * kPi * (shifted[j] - mean) / (k + n);
  return p;
}

cplx schur_alternant(const Label& label, const std::vector<cplx>& x) {
  const auto n = static_cast<Eigen::Index>(x.size());
  if (static_cast<Eigen::Index>(label.length()) > n) return 0.0;
  const cplx denom = vandermonde(x);
  if (std::abs(denom) < 1e-13) throw ConsistencyError("alternant denominator", std::abs(denom), 1e-13);
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = std::pow(x[i], static_cast<double>(label.row(static_cast<std::size_t>(j)) + n - 1 - j));
  return a.partialPivLu().determinant() / denom;
}

cplx schur_jacobi_trudi(const Label& label, const std::vector<cplx>& x) {
  const int len = static_cast<int>(label.length());
  if (len == 0) return 1.0;
  if (len > static_cast<int>(x.size())) return 0.0;
  const int top = label.row(0) + len;
  // h[r] = complete homogeneous symmetric polynomial of degree r, built one variable at a time.
  std::vector<cplx> h(static_cast<std::size_t>(top + 1), 0.0);
  h[0] = 1.0;
  for (const cplx& xi : x)
    for (int r = 1; r <= top; ++r) h[r] += xi * h[r - 1];
  Eigen::MatrixXcd m(len, len);
  for (int i = 0; i < len; ++i)
    for (int j = 0; j < len; ++j) {
      const int r = label.row(static_cast<std::size_t>(i)) - i + j;
      m(i, j) = (r < 0 || r > top) ? cplx(0.0) : h[r];
    }
  return m.partialPivLu().determinant();
}

CharacterValue character(const Label& label, const CartanPoint& point) {
  std::vector<cplx> x;
  x.reserve(point.angles.size());
  for (double a : point.angles) x.push_back(std::polar(1.0, a));
  const double cond = factorial(static_cast<int>(x.size())) / std::abs(vandermonde(x));
  if (cond > 1e8) return {schur_jacobi_trudi(label, x), CharacterMethod::JacobiTrudi, cond};
  return {schur_alternant(label, x), CharacterMethod::Alternant, cond};
}

cplx char_ratio(const Label& lambda, const Label& mu, int n, int k) {
  check_params(n, k);
  require_member(lambda, n, k);
  require_member(mu, n, k);
  if (lambda.is_trivial()) return 1.0;
  return character(lambda, kac_point(mu, n, k)).value;
}

std::size_t ModularData::index_of(const Label& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end())
    throw DomainError("label " + label.to_string() + " is not in the label set");
  return static_cast<std::size_t>(it - labels.begin());
}

Eigen::MatrixXd ModularData::dual_permutation() const {
  const auto m = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    p(static_cast<Eigen::Index>(index_of(dual(labels[j], n, k))), j) = 1.0;
  return p;
}

SMatrixResiduals residuals(const ModularData& data) {
  const auto m = data.S.rows();
  SMatrixResiduals r;
  r.unitarity = (data.S * data.S.adjoint() - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff();
  r.symmetry = (data.S - data.S.transpose()).cwiseAbs().maxCoeff();
  r.dual_square = (data.S * data.S - data.dual_permutation().cast<cplx>()).cwiseAbs().maxCoeff();
  r.min_first_row = data.S.row(0).real().minCoeff();
  return r;
}

ModularData s_matrix(int n, int k, double tolerance) {
  check_params(n, k);
  ModularData d;
  d.n = n;
  d.k = k;
  d.labels = build_label_set(n, k);
  const auto m = static_cast<Eigen::Index>(d.labels.size());
  d.R.resize(m, m);
  d.S.resize(m, m);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t col) {
    const auto mu = static_cast<Eigen::Index>(col);
    const CartanPoint p = kac_point(d.labels[col], n, k);
    double norm2 = 0.0;
    for (Eigen::Index lam = 0; lam < m; ++lam) {
      const cplx r = d.labels[lam].is_trivial() ? cplx(1.0) : character(d.labels[lam], p).value;
      d.R(lam, mu) = r;
      norm2 += std::norm(r);
    }
    const double s0 = 1.0 / std::sqrt(norm2);
    d.S.col(mu) = d.R.col(mu) * s0;
  });

  const SMatrixResiduals r = residuals(d);
  if (r.unitarity > tolerance) throw ConsistencyError("S unitarity", r.unitarity, tolerance);
  if (r.symmetry > tolerance) throw ConsistencyError("S symmetry", r.symmetry, tolerance);
  if (r.dual_square > tolerance) throw ConsistencyError("S^2 = dual permutation", r.dual_square, tolerance);
  if (!(r.min_first_row > 0.0)) throw ConsistencyError("S_0mu positivity", -r.min_first_row, 0.0);
  return d;
}

std::vector<SpectrumEntry> curve_spectrum(const Label& lambda, const ModularData& data) {
  const std::size_t row = data.index_of(lambda);
  std::vector<SpectrumEntry> out;
  out.reserve(data.labels.size());
  for (std::size_t mu = 0; mu < data.labels.size(); ++mu)
    out.push_back({data.R(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(mu)), data.labels[mu]});
  return out;
}

std::vector<SpectrumEntry> curve_spectrum(const Label& lambda, int n, int k) {
  check_params(n, k);
  require_member(lambda, n, k);
  std::vector<SpectrumEntry> out;
  for (const Label& mu : build_label_set(n, k)) out.push_back({char_ratio(lambda, mu, n, k), mu});
  return out;
}

VerlindeResult verlinde_dim(const ModularData& data, int genus, const std::vector<Label>& boundary,
                            double tolerance) {
  if (genus < 0) throw DomainError("genus must be >= 0");
  std::vector<std::size_t> rows;
  for (const Label& l : boundary) {
    require_member(l, data.n, data.k);
    rows.push_back(data.index_of(l));
  }
  cplx total = 0.0;
  for (Eigen::Index mu = 0; mu < data.S.cols(); ++mu) {
    cplx term = std::pow(data.S(0, mu).real(), 2.0 - 2.0 * genus);
    for (std::size_t r : rows) term *= data.R(static_cast<Eigen::Index>(r), mu);
    total += term;
  }
  VerlindeResult res;
  res.value = total.real();
  res.nearest = std::llround(res.value);
  res.deviation = std::max(std::abs(res.value - static_cast<double>(res.nearest)), std::abs(total.imag()));
  const double rel = res.deviation / std::max(1.0, std::abs(res.value));
  if (res.nearest < 0 || rel > tolerance)
    throw ConsistencyError("Verlinde integrality", res.deviation, tolerance);
  return res;
}

VerlindeResult verlinde_dim(int n, int k, int genus, const std::vector<Label>& boundary,
                            double tolerance) {
  return verlinde_dim(s_matrix(n, k), genus, boundary, tolerance);
}

}  // namespace quantlab::modular
