#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kirchhoff2d/calculus/poly.hpp"

namespace kirchhoff2d::calculus {

// components of the symbols the engine knows about
enum class Sym : std::uint8_t { U, Psi, PhiHat, Scalar };

// d_1^{d1} d_2^{d2} D^a sym_{i j}; indices are 0-based, unused ones stay 0
struct Atom {
  Sym sym = Sym::U;
  std::uint8_t i = 0, j = 0;
  std::uint8_t a = 0;
  std::uint8_t d1 = 0, d2 = 0;

  auto operator<=>(const Atom&) const = default;
  int derivatives() const { return d1 + d2; }
  std::string str() const;

  static Atom u(int i, int a = 0) { return {Sym::U, std::uint8_t(i), 0, std::uint8_t(a), 0, 0}; }
  static Atom psi(int i, int a = 0) { return {Sym::Psi, std::uint8_t(i), 0, std::uint8_t(a), 0, 0}; }
  static Atom phi_hat(int i, int j, int a = 0) { return {Sym::PhiHat, std::uint8_t(i), std::uint8_t(j), std::uint8_t(a), 0, 0}; }
  static Atom scalar(int a = 0) { return {Sym::Scalar, 0, 0, std::uint8_t(a), 0, 0}; }
  Atom diff(int k) const;  // k = 0 or 1
};

using Monomial = std::vector<Atom>;  // sorted, repeated atoms allowed

// sum of monomials with integer coefficients, kept canonical at all times
class NormalForm {
 public:
  NormalForm() = default;
  explicit NormalForm(const Atom& a);
  static NormalForm constant(const Integer& c);

  const std::map<Monomial, Integer>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  void add(const Monomial& m, const Integer& c);
  std::string str() const;

  NormalForm& operator+=(const NormalForm& o);
  NormalForm& operator-=(const NormalForm& o);
  NormalForm& operator*=(const Integer& s);
  friend NormalForm operator+(NormalForm a, const NormalForm& b) { return a += b; }
  friend NormalForm operator-(NormalForm a, const NormalForm& b) { return a -= b; }
  friend NormalForm operator*(NormalForm a, const Integer& s) { return a *= s; }
  friend NormalForm operator*(const NormalForm& a, const NormalForm& b);
  NormalForm operator-() const { return *this * Integer(-1); }
  bool operator==(const NormalForm& o) const { return t_ == o.t_; }

 private:
  std::map<Monomial, Integer> t_;
};

// D = d_t + u . grad, through Leibniz and d_k D - D d_k = (d_k u_m) d_m
NormalForm material(const NormalForm& f);
NormalForm material(const Atom& a);
NormalForm partial(const NormalForm& f, int k);

// rewrite d_2 u_2 -> -d_1 u_1 (only valid for div u = 0; D^a u with a > 0 is left alone)
NormalForm reduce_divergence_free(const NormalForm& f);

// expression trees; normalize() evaluates them into the canonical sum
class Expr {
 public:
  enum class Op { Atom, Const, Add, Mul, D, Partial };

  static Expr atom(const Atom& a);
  static Expr constant(const Integer& c);
  static Expr from(const NormalForm& f);
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr D(const Expr& e);
  friend Expr d(const Expr& e, int k);

  Op op() const;
  NormalForm normalize() const;
  size_t nodes() const;

  struct Node;

 private:
  std::shared_ptr<const Node> n_;
};

using EVec = std::array<Expr, 2>;

Expr div(const EVec& v);
Expr curl(const EVec& v);  // d_1 v_2 - d_2 v_1
EVec D(const EVec& v);
EVec field(Sym s);         // (s_0, s_1) as atoms
EVec gradient_of_scalar();

// div D psi -> D div psi + tr(grad u . grad psi), curl likewise with as{}
Expr commute_div_D(const EVec& psi);
Expr commute_curl_D(const EVec& psi);

// substitutes instance polynomials for the symbols
class Evaluator {
 public:
  Evaluator(PVec u, PVec psi, PMat phi_hat = {}, Poly scalar = {});
  const Poly& atom(const Atom& a);
  Poly operator()(const NormalForm& f);

 private:
  const Poly& base(Sym s, int i, int j, int a);
  PVec u_, psi_;
  PMat phi_hat_;
  Poly scalar_;
  std::map<std::array<int, 4>, Poly> dpow_;
  std::map<Atom, Poly> memo_;
};

}  // namespace kirchhoff2d::calculus
