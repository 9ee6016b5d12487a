#pragma once

// Truncated bivariate Taylor polynomials in (d1, d2) used to differentiate the
// nearest-point projection exactly.

#include <vector>

namespace kirchhoff2d {

class Jet2 {
 public:
  explicit Jet2(int order = 0, double value = 0.0);
  static Jet2 variable(int order, int which, double value);  // value + d_which

  int order() const { return n_; }
  double& at(int i, int j) { return c_[index(i, j)]; }
  double at(int i, int j) const { return c_[index(i, j)]; }
  double value() const { return c_[0]; }
  // partial derivative d1^i d2^j at the expansion point
  double partial(int i, int j) const;

  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(double a);
  Jet2& operator+=(double a) { c_[0] += a; return *this; }

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
  friend Jet2 operator*(double s, Jet2 a) { return a *= s; }
  friend Jet2 operator+(Jet2 a, double s) { return a += s; }
  friend Jet2 operator-(Jet2 a, double s) { return a += -s; }
  friend Jet2 operator-(Jet2 a) { return a *= -1.0; }
  friend Jet2 operator*(const Jet2& a, const Jet2& b);
  friend Jet2 operator/(const Jet2& a, const Jet2& b) { return a * b.reciprocal(); }

  Jet2 reciprocal() const;
  Jet2 sqrt() const;
  Jet2 cos() const;
  Jet2 sin() const;
  // f(value + e) = sum_m derivs[m]/m! e^m
  Jet2 compose(const std::vector<double>& derivs) const;

 private:
  int index(int i, int j) const {
    int t = i + j;
    return t * (t + 1) / 2 + j;
  }
  int n_;
  std::vector<double> c_;
};

}  // namespace kirchhoff2d
