#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kirchhoff2d/errors.hpp"
#include "kirchhoff2d/geometry.hpp"

using namespace kirchhoff2d;

namespace {
constexpr double kPi = std::numbers::pi;

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// d1^(s-j) d2^j of f by nested central differences, Richardson-extrapolated
double fd_partial(const std::function<double(Vec2)>& f, Vec2 x, int i, int j, double h) {
  auto nested = [&](double step) {
    std::function<double(Vec2, int, int)> rec = [&](Vec2 p, int a, int b) -> double {
      if (a == 0 && b == 0) return f(p);
      Vec2 e = a > 0 ? Vec2(step, 0) : Vec2(0, step);
      int a2 = a > 0 ? a - 1 : a, b2 = a > 0 ? b : b - 1;
      return (rec(p + e, a2, b2) - rec(p - e, a2, b2)) / (2 * step);
    };
    return rec(x, i, j);
  };
  double d1 = nested(h), d2 = nested(h / 2);
  return (4 * d2 - d1) / 3;
}
}  // namespace

TEST_CASE("rotation matrix basics") {
  CHECK((rotation_matrix(0) - Mat2::Identity()).norm() == 0.0);
  Mat2 q = rotation_matrix(kPi / 2);
  CHECK(q(0, 0) == doctest::Approx(0).epsilon(1e-15));
  CHECK(q(0, 1) == doctest::Approx(-1));
  CHECK(q(1, 0) == doctest::Approx(1));
  CHECK((rotation_matrix(0.3) * rotation_matrix(0.4) - rotation_matrix(0.7)).norm() < 1e-12);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 100; ++i) {
    Mat2 r = rotation_matrix(u(rng));
    CHECK(std::abs(r.determinant() - 1) < 1e-12);
    CHECK((r.transpose() * r - Mat2::Identity()).norm() < 1e-12);
  }
}

TEST_CASE("perp and solid velocity") {
  CHECK(perp(Vec2(1, 0)) == Vec2(0, 1));
  CHECK(perp(Vec2(0, 1)) == Vec2(-1, 0));
  CHECK(perp(Vec2(3, 4)) == Vec2(-4, 3));
  CHECK(perp(Vec2(3, 4)).dot(Vec2(3, 4)) == 0.0);
  CHECK(perp(perp(Vec2(2, -5))) == Vec2(-2, 5));

  RigidState s;
  s.ell = Vec2(1, 2);
  CHECK(solid_velocity(s, Vec2(7, -3)) == Vec2(1, 2));
  s.ell = Vec2::Zero();
  s.r = 1;
  s.h = Vec2(2, 2);
  CHECK(solid_velocity(s, Vec2(3, 2)) == Vec2(0, 1));
  s.ell = Vec2(1, 0);
  s.r = 2;
  CHECK(solid_velocity(s, Vec2(2, 3)) == Vec2(-1, 0));
}

TEST_CASE("body map and rigid motions") {
  RigidMotion id;
  Vec2 h0(1, -2), x(0.3, 0.7);
  id.translation = h0;
  CHECK((body_map(id, h0, x) - x).norm() < 1e-15);
  RigidMotion tr;
  tr.translation = h0 + Vec2(2, 5);
  CHECK((body_map(tr, h0, x) - (x + Vec2(2, 5))).norm() < 1e-15);
  RigidMotion half;
  half.rotation_angle = kPi;
  CHECK((body_map(half, Vec2::Zero(), x) + x).norm() < 1e-15);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 50; ++i) {
    RigidMotion m{Vec2(u(rng), u(rng)), u(rng)};
    Vec2 a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng));
    CHECK(std::abs((body_map(m, c, a) - body_map(m, c, b)).norm() - (a - b).norm()) < 1e-12);
    RigidMotion e = m.compose(m.inverse());
    CHECK(e.translation.norm() < 1e-12);
    CHECK(std::abs(e.rotation_angle) < 1e-12);
    CHECK((m.inverse().apply(m.apply(a)) - a).norm() < 1e-12);
  }
}

TEST_CASE("unit disc distance examples") {
  BodyShape d = BodyShape::disc(1.0);
  DistanceJet j1 = distance_and_derivatives(d, Vec2(2, 0), 1);
  CHECK(j1.rho == doctest::Approx(1.0));
  CHECK(j1.d(1).c[0] == doctest::Approx(1.0));
  CHECK(std::abs(j1.d(1).c[1]) < 1e-15);
  DistanceJet j2 = distance_and_derivatives(d, Vec2(2, 0), 2);
  Mat2 h = j2.d(2).matrix();
  CHECK(std::abs(h(0, 0)) < 1e-14);
  CHECK(std::abs(h(0, 1)) < 1e-14);
  CHECK(h(1, 1) == doctest::Approx(0.5));
}

TEST_CASE("projection jets agree with the closed-form disc") {
  BodyShape closed = BodyShape::disc(1.3);
  FourierCoeffs c{{0, 1.3}, {0, 0}, {0, 0}, {0, 1.3}};
  BodyShape generic = BodyShape::fourier(c);
  for (Vec2 x : {Vec2(1.5, 0.2), Vec2(-0.4, 1.9), Vec2(1.0, -1.0), Vec2(-1.2, -0.1)}) {
    DistanceJet a = closed.distance(x, 4), b = generic.distance(x, 4);
    CHECK(a.rho == doctest::Approx(b.rho).epsilon(1e-12));
    for (int s = 1; s <= 4; ++s)
      for (int j = 0; j <= s; ++j) CHECK(std::abs(a.d(s).c[j] - b.d(s).c[j]) < 1e-9);
  }
}

TEST_CASE("projection jets agree with finite differences on an ellipse and a fourier shape") {
  FourierCoeffs c{{0, 1.2, 0.1}, {0, 0.05, 0}, {0, 0.0, -0.03}, {0, 0.8, 0.1}};
  for (const BodyShape& shape : {BodyShape::ellipse(2.0, 1.0), BodyShape::fourier(c)}) {
    auto rho = [&](Vec2 p) { return shape.signed_distance(p); };
    for (Vec2 x : {Vec2(2.3, 0.4), Vec2(0.3, 1.3), Vec2(-1.5, -0.9)}) {
      DistanceJet j = shape.distance(x, 4);
      CHECK(j.rho == doctest::Approx(rho(x)).epsilon(1e-12));
      for (int s = 1; s <= 3; ++s)
        for (int k = 0; k <= s; ++k) {
          double fd = fd_partial(rho, x, s - k, k, 2e-3);
          CHECK(std::abs(j.d(s).c[k] - fd) < 1e-5 * std::max(1.0, std::abs(fd)));
        }
    }
  }
}

TEST_CASE("gradient of rho is the unit normal; boundary points have zero distance") {
  FourierCoeffs c{{0, 1.0, 0.12}, {0, 0, 0}, {0, 0, 0}, {0, 0.7, 0.05}};
  for (const BodyShape& shape : {BodyShape::disc(1), BodyShape::ellipse(2, 1), BodyShape::fourier(c)}) {
    for (int i = 0; i < 64; ++i) {
      double s = 2 * kPi * i / 64 + 0.01;
      DistanceJet j = shape.boundary_distance(s, 2);
      CHECK(std::abs(j.rho) < 1e-12);
      Vec2 g(j.d(1).c[0], j.d(1).c[1]);
      CHECK(std::abs(g.norm() - 1) < 1e-12);
      CHECK(std::abs(g.dot(shape.unit_tangent(s))) < 1e-12);
      CHECK((g + shape.normal(s)).norm() < 1e-12);
      // on the curve nabla^2 rho = kappa tau tau^T
      Vec2 t = shape.unit_tangent(s);
      Mat2 expect = shape.curvature(s) * t * t.transpose();
      CHECK((j.d(2).matrix() - expect).norm() < 1e-9);
      CHECK(std::abs(shape.signed_distance(shape.point(s))) < 1e-12);
    }
  }
}

TEST_CASE("disc satisfies its declared Gevrey bound") {
  for (double R : {0.5, 1.0, 3.0}) {
    BodyShape d = BodyShape::disc(R);
    double c = d.gevrey_constant(), M = d.gevrey_order();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(0, 2 * kPi), dist(-d.inner_collar_width(), d.collar_width());
    for (int i = 0; i < 40; ++i) {
      double r = R + dist(rng), a = ang(rng);
      DistanceJet j = d.distance(Vec2(r * std::cos(a), r * std::sin(a)), 6);
      for (int s = 1; s <= 6; ++s)
        CHECK(j.d(s).norm() <= std::pow(c, s) * std::pow(factorial(s), M));
    }
  }
}

TEST_CASE("tensor norm and rotation") {
  BodyShape e = BodyShape::ellipse(2, 1);
  DistanceJet j = e.distance(Vec2(2.5, 0.7), 3);
  for (int s = 1; s <= 3; ++s) {
    SymTensor r = rotate_tensor(j.d(s), 0.9);
    CHECK(r.norm() == doctest::Approx(j.d(s).norm()).epsilon(1e-9));
    Vec2 v(0.3, -0.8);
    CHECK(r.contract(rotation_matrix(0.9) * v) == doctest::Approx(j.d(s).contract(v)).epsilon(1e-12));
  }
  // world-frame distance of a rotated pose equals body-frame distance of the pulled back point
  RigidState st;
  st.h = Vec2(1, -2);
  st.theta = 0.6;
  Vec2 y(2.4, 0.3);
  Vec2 x = rotation_matrix(st.theta) * y + st.h;
  DistanceJet w = distance_and_derivatives(e, st, x, 2);
  DistanceJet b = e.distance(y, 2);
  CHECK(w.rho == doctest::Approx(b.rho));
  Mat2 q = rotation_matrix(st.theta);
  CHECK((w.d(2).matrix() - q * b.d(2).matrix() * q.transpose()).norm() < 1e-12);
}

TEST_CASE("collar and shape validation") {
  FourierCoeffs bean{{0, 1.0, 0.0, 0.1}, {0, 0, 0, 0}, {0, 0, 0.35, 0}, {0, 0.8, 0, 0}};
  BodyShape b = BodyShape::fourier(bean);
  CHECK_FALSE(b.convex());
  CHECK(b.collar_width() < b.diameter());
  CHECK_THROWS_AS(b.distance(Vec2(10, 10), 2), CollarViolation);
  CHECK_NOTHROW(b.distance(Vec2(10, 10), 1));
  BodyShape d = BodyShape::disc(1);
  CHECK_THROWS_AS(d.distance(Vec2(0, 0), 1), CollarViolation);
  CHECK_THROWS_AS(d.distance(Vec2(10, 0), 2), CollarViolation);
  d.set_collar_width(20);
  CHECK_NOTHROW(d.distance(Vec2(10, 0), 2));

  // clockwise input is reoriented
  FourierCoeffs cw{{0, 1.0}, {0, 0}, {0, 0}, {0, -1.0}};
  BodyShape r = BodyShape::fourier(cw);
  CHECK(r.area() == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(r.curvature(0.3) > 0);
  // figure-eight
  FourierCoeffs eight{{0, 1.0}, {0, 0}, {0, 0}, {0, 0, 1.0}};
  CHECK_THROWS_AS(BodyShape::fourier(eight), InvalidShape);
  CHECK_THROWS_AS(BodyShape::disc(-1), InvalidShape);
}

TEST_CASE("rotated shape has rotated distance") {
  BodyShape e = BodyShape::ellipse(2, 1);
  BodyShape r = e.rotated(0.7);
  Vec2 x(1.7, 1.4);
  CHECK(r.signed_distance(rotation_matrix(0.7) * x) ==
        doctest::Approx(e.signed_distance(x)).epsilon(1e-12));
  CHECK(r.perimeter() == doctest::Approx(e.perimeter()).epsilon(1e-12));
}
