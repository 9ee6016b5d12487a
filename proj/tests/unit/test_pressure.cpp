#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kirchhoff2d/errors.hpp"
#include "kirchhoff2d/pressure.hpp"

using namespace kirchhoff2d;

namespace {
constexpr double kPi = std::numbers::pi;

struct Setup {
  PanelSystem panels;
  RigidState state;
  VortexField field;
  FlowField flow;
  PressureField mu;
  Eigen::Vector3d rhs, rhs_direct;

  Setup(const BodyShape& shape, const RigidState& s, const VortexField& f, int n)
      : panels(build_panels(shape, s, n)), state(s), field(f), flow(panels, s, f), mu(solve_mu(flow)) {
    PanelSystem body = build_panels(shape, RigidState{}, n);
    KirchhoffPotentials k(body);
    rhs = body_force_rhs(mu, k.world(s.theta), panels, s);
    rhs_direct = body_force_rhs_direct(mu, panels, s);
  }
};

VortexField cloud(int n, Vec2 centre, double radius, double total, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  VortexField f;
  while (static_cast<int>(f.size()) < n) {
    Vec2 p(u(rng), u(rng));
    if (p.norm() > 1) continue;
    f.positions.push_back(centre + radius * p);
    f.strengths.push_back(total / n);
    f.areas.push_back(kPi * radius * radius / n);
  }
  f.core_radius = default_core_radius(f.positions);
  return f;
}
}  // namespace

TEST_CASE("boundary data for a rigidly co-moving field") {
  PanelSystem p = build_panels(BodyShape::ellipse(2, 1), RigidState{}, 64);
  RigidState s;
  s.h = Vec2(0.3, -0.2);
  s.ell = Vec2(0.4, 1.0);
  s.r = 0.7;
  PanelSystem moved = p.moved(s);
  Eigen::VectorXd sig = sigma_boundary_data(moved, s, [&](const Vec2& x) { return solid_velocity(s, x); });
  for (int i = 0; i < moved.size(); ++i)
    CHECK(sig[i] == doctest::Approx(s.r * s.r * (moved.nodes()[i] - s.h).dot(moved.normals()[i])).epsilon(1e-12));
}

TEST_CASE("disc with circulation at rest") {
  VortexField f;
  f.gamma = 2 * kPi;
  Setup st(BodyShape::disc(1), RigidState{}, f, 128);
  // d mu / dn = -gamma^2/(4 pi^2 R^3) with n pointing into the disc
  for (int i = 0; i < st.panels.size(); ++i)
    CHECK(st.mu.boundary_data[i] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(st.mu.compatibility < 1e-12);
  for (Vec2 x : {Vec2(1.5, 0), Vec2(-0.3, 2.2), Vec2(1.02, 0.1)}) {
    double r = x.norm();
    Vec2 g = mu_gradient(st.mu, st.flow, x);
    Vec2 exact = x / (r * r * r * r);  // gamma^2/(4 pi^2 r^3) r_hat
    CHECK((g - exact).norm() < 1e-2 * exact.norm());
  }
  CHECK(st.rhs.norm() < 1e-10);
}

TEST_CASE("d'Alembert: steady translation without circulation") {
  RigidState s;
  s.ell = Vec2(0.8, -0.5);
  Setup st(BodyShape::disc(1), s, VortexField{}, 128);
  CHECK(st.rhs.norm() < 1e-3);
  Setup se(BodyShape::ellipse(2, 1), RigidState{.ell = Vec2(1, 0)}, VortexField{}, 128);
  CHECK(se.rhs.norm() < 1e-3);
}

TEST_CASE("Kutta-Joukowski lift") {
  RigidState s;
  s.ell = Vec2(0.6, 0.3);
  VortexField f;
  f.gamma = 1.3;
  Setup st(BodyShape::disc(1), s, f, 128);
  Vec2 F(st.rhs[0], st.rhs[1]);
  Vec2 kj = f.gamma * perp(s.ell);
  CHECK(std::abs(F.norm() - kj.norm()) < 0.02 * kj.norm());
  CHECK(std::abs(F.dot(s.ell)) < 1e-3 * kj.norm());
  CHECK((F - kj).norm() < 1e-6);
  CHECK(std::abs(st.rhs[2]) < 1e-8);
  CHECK((st.rhs - st.rhs_direct).norm() < 1e-8);
}

TEST_CASE("Munk moment on a translating ellipse") {
  // (I + m33) Omega' = (m11 - m22) U1 U2 with m11 = pi b^2, m22 = pi a^2
  RigidState s;
  s.ell = Vec2(1, 1) / std::sqrt(2.0);
  Setup st(BodyShape::ellipse(2, 1), s, VortexField{}, 128);
  CHECK(std::abs(st.rhs[0]) < 1e-6);
  CHECK(std::abs(st.rhs[1]) < 1e-6);
  CHECK(st.rhs[2] == doctest::Approx(kPi * (1 - 4) / 2).epsilon(1e-6));

  // rotated pose, velocity given in the world frame
  RigidState t;
  t.theta = 0.9;
  t.h = Vec2(-1, 2);
  t.ell = rotation_matrix(t.theta) * s.ell;
  Setup sr(BodyShape::ellipse(2, 1), t, VortexField{}, 128);
  CHECK((sr.rhs - st.rhs).norm() < 1e-6);
}

TEST_CASE("steadily spinning ellipse feels no load") {
  RigidState s;
  s.r = 1.0;
  Setup st(BodyShape::ellipse(2, 1), s, VortexField{}, 128);
  CHECK(st.rhs.norm() < 1e-6);
  CHECK((st.rhs - st.rhs_direct).norm() < 1e-6);
}

TEST_CASE("pressure with free vorticity") {
  VortexField f = cloud(60, Vec2(2.6, 0.4), 0.5, 1.5, 11);
  f.gamma = -0.4;
  RigidState s;
  s.ell = Vec2(0.2, -0.1);
  s.r = 0.3;
  Setup st(BodyShape::ellipse(1.5, 1), s, f, 128);
  CHECK(st.mu.compatibility_relative < 1e-6);
  CHECK((st.rhs - st.rhs_direct).norm() < 1e-6 * std::max(1.0, st.rhs.norm()));

  // gradient against centred differences of mu
  for (Vec2 x : {Vec2(0.3, 1.6), Vec2(-2, -0.5)}) {
    double h = 1e-5;
    Vec2 fd((mu_value(st.mu, st.flow, x + Vec2(h, 0)) - mu_value(st.mu, st.flow, x - Vec2(h, 0))) / (2 * h),
            (mu_value(st.mu, st.flow, x + Vec2(0, h)) - mu_value(st.mu, st.flow, x - Vec2(0, h))) / (2 * h));
    CHECK((mu_gradient(st.mu, st.flow, x) - fd).norm() < 1e-6);
  }

  // gauge: a constant added to mu leaves the load unchanged
  PressureField shifted = st.mu;
  shifted.mu_trace.array() += 3.7;
  CHECK((body_force_rhs_direct(shifted, st.panels, s) - st.rhs_direct).norm() < 1e-10);

  // rigid motion of the whole configuration rotates the force
  double a = 0.6;
  RigidMotion m{Vec2(1, -2), a};
  Mat2 q = rotation_matrix(a);
  RigidState t = s;
  t.h = body_map(m, Vec2::Zero(), s.h);
  t.theta = s.theta + a;
  t.ell = q * s.ell;
  VortexField g = f;
  for (auto& p : g.positions) p = body_map(m, Vec2::Zero(), p);
  Setup sm(BodyShape::ellipse(1.5, 1), t, g, 128);
  Vec2 F(st.rhs[0], st.rhs[1]), Fm(sm.rhs[0], sm.rhs[1]);
  CHECK((q * F - Fm).norm() < 1e-8 * std::max(1.0, F.norm()));
  CHECK(sm.rhs[2] == doctest::Approx(st.rhs[2]).epsilon(1e-8));
}
