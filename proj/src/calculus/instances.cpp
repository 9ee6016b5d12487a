#include "kirchhoff2d/calculus/instances.hpp"

namespace kirchhoff2d::calculus {

Rational Rng::rational(const InstanceOptions& o) {
  std::uniform_int_distribution<int> num(-o.max_numerator, o.max_numerator), den(1, o.max_denominator);
  Rational q(num(g_), den(g_));
  q.canonicalize();
  return q;
}

Rational Rng::nonzero_rational(const InstanceOptions& o) {
  for (;;) {
    Rational q = rational(o);
    if (q != 0) return q;
  }
}

bool Rng::coin(double p) { return std::uniform_real_distribution<double>(0, 1)(g_) < p; }

Poly Rng::poly(int xdeg, int tdeg, const InstanceOptions& o, int trunc) {
  Poly p(0, trunc);
  for (int et = 0; et <= tdeg; ++et)
    for (int d = 0; d <= xdeg; ++d)
      for (int e1 = 0; e1 <= d; ++e1)
        if (coin(o.density)) p += Poly::monomial(nonzero_rational(o), et, e1, d - e1, trunc);
  return p;
}

bool PolynomialFieldInstance::divergence_free() const { return div(u).is_zero() && div(w).is_zero(); }

PolynomialFieldInstance random_instance(std::uint64_t seed, const InstanceOptions& o) {
  Rng rng(seed);
  PolynomialFieldInstance in;
  in.seed = seed;
  // keep u non-trivial: force a linear strain and a quadratic term
  in.stream = rng.poly(o.stream_degree, o.time_degree, o);
  in.stream += Poly::monomial(rng.nonzero_rational(o), 0, 1, 1);
  in.stream += Poly::monomial(rng.nonzero_rational(o), 1, 2, 1);
  in.u = perp(grad(in.stream));
  for (auto& c : in.psi) c = rng.poly(o.field_degree, o.time_degree, o);
  in.scalar = rng.poly(o.field_degree, o.time_degree, o);
  for (auto& row : in.phi_hat)
    for (auto& c : row) c = rng.poly(o.field_degree, o.time_degree, o);
  in.w = perp(grad(rng.poly(o.field_degree + 1, o.time_degree, o)));
  return in;
}

std::vector<Poly> material_powers(const Poly& f, const PVec& u, int n) {
  std::vector<Poly> out{f};
  for (int a = 1; a <= n; ++a) out.push_back(material(out.back(), u));
  return out;
}

std::vector<PVec> material_powers(const PVec& f, const PVec& u, int n) {
  std::vector<PVec> out{f};
  for (int a = 1; a <= n; ++a) out.push_back(material(out.back(), u));
  return out;
}

namespace {
Poly series_cos(const Poly& x, int trunc) {
  // x has no constant term, so the series terminates at the truncation order
  Poly s(1, trunc), term(1, trunc);
  for (int m = 1; 2 * m <= trunc; ++m) {
    term = term * x * x * Rational(-1, (2 * m - 1) * (2 * m));
    s += term;
  }
  return s;
}
Poly series_sin(const Poly& x, int trunc) {
  Poly s = x.truncated(trunc), term = x.truncated(trunc);
  for (int m = 1; 2 * m + 1 <= trunc; ++m) {
    term = term * x * x * Rational(-1, (2 * m) * (2 * m + 1));
    s += term;
  }
  return s;
}
}  // namespace

RigidSeriesInstance random_rigid_instance(std::uint64_t seed, int trunc, const InstanceOptions& o) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
  RigidSeriesInstance in;
  in.seed = seed;
  in.trunc = trunc;
  const int T = trunc;
  auto tpoly = [&](int deg, bool constant) {
    Poly p;
    for (int e = constant ? 0 : 1; e <= deg; ++e) p += Poly::monomial(rng.nonzero_rational(o), e, 0, 0);
    return p;
  };
  // exact polynomials in t, truncated only once they meet the series
  in.h = {tpoly(3, true), tpoly(3, true)};
  in.ell = {in.h[0].diff(0).truncated(T), in.h[1].diff(0).truncated(T)};
  in.theta = tpoly(3, false);
  if (!o.rotating) in.theta = Poly{};
  in.r = in.theta.diff(0).truncated(T);
  for (auto& v : in.h) v = v.truncated(T);
  in.theta = in.theta.truncated(T);

  // fixed Pythagorean rotation times rot(theta(t))
  const Rational c0(3, 5), s0(4, 5);
  Poly c = series_cos(in.theta, T), s = series_sin(in.theta, T);
  in.Q[0][0] = c * c0 - s * s0;
  in.Q[0][1] = -(s * c0 + c * s0);
  in.Q[1][0] = s * c0 + c * s0;
  in.Q[1][1] = c * c0 - s * s0;

  PVec xh = {Poly::var(1, T) - in.h[0], Poly::var(2, T) - in.h[1]};
  PVec y = {in.Q[0][0] * xh[0] + in.Q[1][0] * xh[1], in.Q[0][1] * xh[0] + in.Q[1][1] * xh[1]};
  // rho0 of degree trunc so that every derivative in play is generic
  in.rho = Poly(0, T);
  std::vector<Poly> p1{Poly(1, T)}, p2{Poly(1, T)};
  for (int d = 1; d <= T; ++d) {
    p1.push_back(p1.back() * y[0]);
    p2.push_back(p2.back() * y[1]);
  }
  for (int d = 0; d <= T; ++d)
    for (int a = 0; a <= d; ++a)
      if (rng.coin(o.density)) in.rho += p1[a] * p2[d - a] * rng.nonzero_rational(o);

  Poly stream = rng.poly(o.stream_degree, o.time_degree, o);
  stream += Poly::monomial(rng.nonzero_rational(o), 0, 1, 1);
  in.u = perp(grad(stream));
  for (auto& v : in.u) v = v.truncated(T);
  in.u_solid = {in.ell[0] - in.r * xh[1], in.ell[1] + in.r * xh[0]};
  in.phi = {in.u[0] - in.u_solid[0], in.u[1] - in.u_solid[1]};
  for (auto& v : in.psi) v = rng.poly(o.field_degree, o.time_degree, o).truncated(T);
  in.sigma[0] = {Poly(1, T), Poly(0, T)};
  in.sigma[1] = {Poly(0, T), Poly(1, T)};
  in.sigma[2] = perp(xh);
  return in;
}

}  // namespace kirchhoff2d::calculus
