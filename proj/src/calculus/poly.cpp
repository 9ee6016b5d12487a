#include "kirchhoff2d/calculus/poly.hpp"

#include <algorithm>
#include <sstream>

namespace kirchhoff2d::calculus {

namespace {
int combine(int a, int b) {
  if (a < 0) return b;
  if (b < 0) return a;
  return std::min(a, b);
}
int degree_of(Poly::Key k) {
  auto e = Poly::exponents(k);
  return e[0] + e[1] + e[2];
}
}  // namespace

Poly::Poly(const Rational& c, int trunc) : trunc_(trunc) {
  if (c != 0) c_[0] = c;
}

Poly Poly::var(int v, int trunc) {
  return monomial(1, v == 0, v == 1, v == 2, trunc);
}

Poly Poly::monomial(const Rational& c, int et, int e1, int e2, int trunc) {
  Poly p;
  p.trunc_ = trunc;
  p.add_term(key(et, e1, e2), c);
  return p;
}

bool Poly::keep(Key k) const { return trunc_ < 0 || degree_of(k) <= trunc_; }

void Poly::add_term(Key k, const Rational& c) {
  if (c == 0 || !keep(k)) return;
  auto [it, fresh] = c_.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }
}

Poly Poly::truncated(int order) const {
  Poly p;
  p.trunc_ = combine(trunc_, order);
  for (const auto& [k, c] : c_)
    if (p.keep(k)) p.c_.emplace(k, c);
  return p;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& kv : c_) d = std::max(d, degree_of(kv.first));
  return d;
}

Poly Poly::diff(int v) const {
  Poly p;
  p.trunc_ = trunc_ < 0 ? -1 : std::max(trunc_ - 1, 0);
  for (const auto& [k, c] : c_) {
    auto e = exponents(k);
    if (e[v] == 0) continue;
    Rational m = c * e[v];
    e[v] -= 1;
    p.add_term(key(e[0], e[1], e[2]), m);
  }
  return p;
}

Rational Poly::eval(const Rational& t, const Rational& x1, const Rational& x2) const {
  Rational s = 0;
  for (const auto& [k, c] : c_) {
    auto e = exponents(k);
    Rational m = c;
    for (int i = 0; i < e[0]; ++i) m *= t;
    for (int i = 0; i < e[1]; ++i) m *= x1;
    for (int i = 0; i < e[2]; ++i) m *= x2;
    s += m;
  }
  return s;
}

Rational Poly::constant() const {
  auto it = c_.find(0);
  return it == c_.end() ? Rational(0) : it->second;
}

std::string Poly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream o;
  bool first = true;
  for (const auto& [k, c] : c_) {
    if (!first) o << " + ";
    first = false;
    o << c.get_str();
    auto e = exponents(k);
    const char* names[] = {"t", "x1", "x2"};
    for (int v = 0; v < 3; ++v)
      if (e[v]) o << "*" << names[v] << (e[v] > 1 ? "^" + std::to_string(e[v]) : "");
  }
  return o.str();
}

Poly& Poly::operator+=(const Poly& o) {
  trunc_ = combine(trunc_, o.trunc_);
  if (trunc_ >= 0)
    for (auto it = c_.begin(); it != c_.end();) it = keep(it->first) ? std::next(it) : c_.erase(it);
  for (const auto& [k, c] : o.c_) add_term(k, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  trunc_ = combine(trunc_, o.trunc_);
  if (trunc_ >= 0)
    for (auto it = c_.begin(); it != c_.end();) it = keep(it->first) ? std::next(it) : c_.erase(it);
  for (const auto& [k, c] : o.c_) add_term(k, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& kv : c_) kv.second *= s;
  return *this;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& kv : p.c_) kv.second = -kv.second;
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly p;
  p.trunc_ = combine(a.trunc_, b.trunc_);
  Rational m;
  for (const auto& [ka, ca] : a.c_)
    for (const auto& [kb, cb] : b.c_) {
      // exponent fields never carry across, so keys add
      Poly::Key k = ka + kb;
      if (!p.keep(k)) continue;
      m = ca * cb;
      auto [it, fresh] = p.c_.try_emplace(k, m);
      if (!fresh) it->second += m;
    }
  for (auto it = p.c_.begin(); it != p.c_.end();) it = it->second == 0 ? p.c_.erase(it) : std::next(it);
  return p;
}

PVec grad(const Poly& f) { return {f.diff(1), f.diff(2)}; }

PMat grad(const PVec& v) {
  PMat m;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) m[k][l] = v[l].diff(k + 1);
  return m;
}

Poly div(const PVec& v) { return v[0].diff(1) + v[1].diff(2); }
Poly curl(const PVec& v) { return v[1].diff(1) - v[0].diff(2); }
Poly trace(const PMat& m) { return m[0][0] + m[1][1]; }

PMat antisym(const PMat& m) {
  PMat a;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) a[k][l] = m[k][l] - m[l][k];
  return a;
}

PMat mul(const PMat& a, const PMat& b) {
  PMat c;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) c[k][l] = a[k][0] * b[0][l] + a[k][1] * b[1][l];
  return c;
}

PVec mul(const PMat& a, const PVec& v) { return {a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]}; }

Poly dot(const PVec& a, const PVec& b) { return a[0] * b[0] + a[1] * b[1]; }
PVec perp(const PVec& v) { return {-v[1], v[0]}; }

Poly material(const Poly& f, const PVec& u) { return f.diff(0) + u[0] * f.diff(1) + u[1] * f.diff(2); }
PVec material(const PVec& f, const PVec& u) { return {material(f[0], u), material(f[1], u)}; }

bool is_zero(const PVec& v) { return v[0].is_zero() && v[1].is_zero(); }
bool is_zero(const PMat& m) { return is_zero(m[0]) && is_zero(m[1]); }

}  // namespace kirchhoff2d::calculus
