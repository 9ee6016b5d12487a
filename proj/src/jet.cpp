#include "jet.hpp"

#include <cmath>
#include <stdexcept>

namespace kirchhoff2d {

Jet2::Jet2(int order, double value) : n_(order), c_((order + 1) * (order + 2) / 2, 0.0) {
  c_[0] = value;
}

Jet2 Jet2::variable(int order, int which, double value) {
  Jet2 j(order, value);
  if (order >= 1) {
    if (which == 0) j.at(1, 0) = 1.0;
    else j.at(0, 1) = 1.0;
  }
  return j;
}

double Jet2::partial(int i, int j) const {
  double f = 1.0;
  for (int k = 2; k <= i; ++k) f *= k;
  for (int k = 2; k <= j; ++k) f *= k;
  return f * at(i, j);
}

Jet2& Jet2::operator+=(const Jet2& o) {
  if (o.n_ != n_) throw std::invalid_argument("jet order mismatch");
  for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  if (o.n_ != n_) throw std::invalid_argument("jet order mismatch");
  for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet2& Jet2::operator*=(double a) {
  for (double& v : c_) v *= a;
  return *this;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("jet order mismatch");
  Jet2 out(a.n_);
  for (int ta = 0; ta <= a.n_; ++ta)
    for (int ja = 0; ja <= ta; ++ja) {
      double va = a.at(ta - ja, ja);
      if (va == 0.0) continue;
      for (int tb = 0; ta + tb <= a.n_; ++tb)
        for (int jb = 0; jb <= tb; ++jb)
          out.at(ta - ja + tb - jb, ja + jb) += va * b.at(tb - jb, jb);
    }
  return out;
}

Jet2 Jet2::compose(const std::vector<double>& derivs) const {
  Jet2 e = *this;
  e.c_[0] = 0.0;
  Jet2 out(n_, derivs.empty() ? 0.0 : derivs[0]);
  Jet2 pw(n_, 1.0);
  double fact = 1.0;
  for (int m = 1; m <= n_ && m < static_cast<int>(derivs.size()); ++m) {
    pw = pw * e;
    fact *= m;
    out += pw * (derivs[m] / fact);
  }
  return out;
}

Jet2 Jet2::reciprocal() const {
  double a = c_[0];
  if (a == 0.0) throw std::domain_error("jet reciprocal of zero");
  std::vector<double> d(n_ + 1);
  // d^m/da^m (1/a) = (-1)^m m! / a^(m+1)
  double f = 1.0 / a;
  for (int m = 0; m <= n_; ++m) {
    d[m] = f;
    f *= -(m + 1) / a;
  }
  return compose(d);
}

Jet2 Jet2::sqrt() const {
  double a = c_[0];
  if (a <= 0.0) throw std::domain_error("jet sqrt of non-positive value");
  std::vector<double> d(n_ + 1);
  double p = 0.5, f = std::sqrt(a);
  for (int m = 0; m <= n_; ++m) {
    d[m] = f;
    f *= p / a;
    p -= 1.0;
  }
  return compose(d);
}

Jet2 Jet2::cos() const {
  std::vector<double> d(n_ + 1);
  double c = std::cos(c_[0]), s = std::sin(c_[0]);
  const double cyc[4] = {c, -s, -c, s};
  for (int m = 0; m <= n_; ++m) d[m] = cyc[m % 4];
  return compose(d);
}

Jet2 Jet2::sin() const {
  std::vector<double> d(n_ + 1);
  double c = std::cos(c_[0]), s = std::sin(c_[0]);
  const double cyc[4] = {s, c, -s, -c};
  for (int m = 0; m <= n_; ++m) d[m] = cyc[m % 4];
  return compose(d);
}

}  // namespace kirchhoff2d
