#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include <gmpxx.h>

namespace kirchhoff2d::calculus {

using Integer = mpz_class;
using Rational = mpq_class;

// exact polynomial in (t, x1, x2); a non-negative truncation order turns it
// into a Taylor series about the origin, dropping total degree > trunc
class Poly {
 public:
  using Key = std::uint32_t;

  Poly() = default;
  explicit Poly(const Rational& c, int trunc = -1);
  static Poly var(int v, int trunc = -1);  // 0 = t, 1 = x1, 2 = x2
  static Poly monomial(const Rational& c, int et, int e1, int e2, int trunc = -1);

  static Key key(int et, int e1, int e2) { return (Key(et) << 20) | (Key(e1) << 10) | Key(e2); }
  static std::array<int, 3> exponents(Key k) { return {int(k >> 20), int((k >> 10) & 1023), int(k & 1023)}; }

  const std::map<Key, Rational>& terms() const { return c_; }
  int trunc() const { return trunc_; }
  Poly truncated(int order) const;
  bool is_zero() const { return c_.empty(); }
  size_t size() const { return c_.size(); }
  int total_degree() const;

  Poly diff(int v) const;
  Rational eval(const Rational& t, const Rational& x1, const Rational& x2) const;
  Rational constant() const;
  std::string str() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& s);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);
  bool operator==(const Poly& o) const { return c_ == o.c_; }

 private:
  void add_term(Key k, const Rational& c);
  bool keep(Key k) const;

  std::map<Key, Rational> c_;
  int trunc_ = -1;
};

using PVec = std::array<Poly, 2>;
using PMat = std::array<std::array<Poly, 2>, 2>;  // m[k][l]

PVec grad(const Poly& f);
PMat grad(const PVec& v);  // (grad v)[k][l] = d_k v_l
Poly div(const PVec& v);
Poly curl(const PVec& v);  // d_1 v_2 - d_2 v_1
Poly trace(const PMat& m);
PMat antisym(const PMat& m);
PMat mul(const PMat& a, const PMat& b);
PVec mul(const PMat& a, const PVec& v);
Poly dot(const PVec& a, const PVec& b);
PVec perp(const PVec& v);  // (-v2, v1)

// d_t f + u . grad f
Poly material(const Poly& f, const PVec& u);
PVec material(const PVec& f, const PVec& u);

bool is_zero(const PVec& v);
bool is_zero(const PMat& m);

}  // namespace kirchhoff2d::calculus
