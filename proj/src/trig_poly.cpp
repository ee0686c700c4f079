#include "quantlab/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace quantlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TrigPoly::TrigPoly(Coeffs coeffs) : coeffs_(std::move(coeffs)) { prune(); }

TrigPoly TrigPoly::constant(cplx c) { return mode(0, 0, c); }

TrigPoly TrigPoly::mode(int m, int n, cplx c) {
  TrigPoly p;
  p.add(m, n, c);
  return p;
}

TrigPoly TrigPoly::cos_x(int m) { return mode(m, 0, 0.5) + mode(-m, 0, 0.5); }
TrigPoly TrigPoly::cos_y(int n) { return mode(0, n, 0.5) + mode(0, -n, 0.5); }
TrigPoly TrigPoly::sin_x(int m) { return mode(m, 0, cplx(0, -0.5)) + mode(-m, 0, cplx(0, 0.5)); }
TrigPoly TrigPoly::sin_y(int n) { return mode(0, n, cplx(0, -0.5)) + mode(0, -n, cplx(0, 0.5)); }

TrigPoly TrigPoly::random(std::mt19937_64& rng, int degree, bool real) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TrigPoly p;
  for (int m = -degree; m <= degree; ++m)
    for (int n = -degree; n <= degree; ++n) p.add(m, n, cplx(u(rng), u(rng)));
  if (real) p = 0.5 * (p + p.conj());
  return p.prune();
}

cplx TrigPoly::coeff(int m, int n) const {
  const auto it = coeffs_.find({m, n});
  return it == coeffs_.end() ? cplx(0.0) : it->second;
}

void TrigPoly::add(int m, int n, cplx c) {
  if (c == cplx(0.0)) return;
  auto [it, inserted] = coeffs_.try_emplace({m, n}, c);
  if (!inserted) {
    it->second += c;
    if (std::abs(it->second) < 1e-15) coeffs_.erase(it);
  }
}

int TrigPoly::degree() const noexcept {
  int d = 0;
  for (const auto& [mn, c] : coeffs_) d = std::max({d, std::abs(mn.first), std::abs(mn.second)});
  return d;
}

double TrigPoly::max_coeff() const noexcept {
  double m = 0.0;
  for (const auto& [mn, c] : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double TrigPoly::l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& [mn, c] : coeffs_) s += std::abs(c);
  return s;
}

bool TrigPoly::is_real(double tol) const {
  for (const auto& [mn, c] : coeffs_)
    if (std::abs(c - std::conj(coeff(-mn.first, -mn.second))) > tol) return false;
  return true;
}

cplx TrigPoly::operator()(double x, double y) const {
  cplx s = 0.0;
  for (const auto& [mn, c] : coeffs_) s += c * std::polar(1.0, kTwoPi * (mn.first * x + mn.second * y));
  return s;
}

TrigPoly TrigPoly::dx() const {
  TrigPoly p;
  for (const auto& [mn, c] : coeffs_) p.add(mn.first, mn.second, c * cplx(0, kTwoPi * mn.first));
  return p;
}

TrigPoly TrigPoly::dy() const {
  TrigPoly p;
  for (const auto& [mn, c] : coeffs_) p.add(mn.first, mn.second, c * cplx(0, kTwoPi * mn.second));
  return p;
}

TrigPoly TrigPoly::conj() const {
  TrigPoly p;
  for (const auto& [mn, c] : coeffs_) p.add(-mn.first, -mn.second, std::conj(c));
  return p;
}

TrigPoly& TrigPoly::prune(double tol) {
  std::erase_if(coeffs_, [tol](const auto& kv) { return std::abs(kv.second) < tol; });
  return *this;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  for (const auto& [mn, c] : o.coeffs_) add(mn.first, mn.second, c);
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
  for (const auto& [mn, c] : o.coeffs_) add(mn.first, mn.second, -c);
  return *this;
}

TrigPoly& TrigPoly::operator*=(cplx c) {
  for (auto& [mn, v] : coeffs_) v *= c;
  return prune();
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly p;
  for (const auto& [ma, ca] : a.coeffs())
    for (const auto& [mb, cb] : b.coeffs()) p.add(ma.first + mb.first, ma.second + mb.second, ca * cb);
  return p.prune();
}

std::string TrigPoly::to_string() const {
  std::ostringstream out;
  out.precision(17);
  bool first = true;
  for (const auto& [mn, c] : coeffs_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.real() << "," << c.imag() << ")e[" << mn.first << "," << mn.second << "]";
  }
  return first ? "0" : out.str();
}

double max_diff(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly d = a;
  for (const auto& [mn, c] : b.coeffs()) d.add(mn.first, mn.second, -c);
  return d.max_coeff();
}

TrigPoly apply(const VectorField& X, const TrigPoly& f) { return X.x * f.dx() + X.y * f.dy(); }

}  // namespace quantlab
