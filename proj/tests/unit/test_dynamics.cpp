#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kirchhoff2d/dynamics.hpp"
#include "kirchhoff2d/errors.hpp"

using namespace kirchhoff2d;

namespace {
constexpr double kPi = std::numbers::pi;

// reduced ODE (m + pi a^2) ell' = gamma ell^perp, closed form
Vec2 orbit_position(Vec2 h0, Vec2 ell0, double omega, double t) {
  Mat2 q = rotation_matrix(omega * t);
  return h0 + perp(ell0 - q * ell0) / omega;
}

double orbit_error(double dt) {
  Scenario s = parse_scenario_text(preset_scenario_text("circulation-orbit"));
  s.dt = dt;
  Trajectory tr = run(s);
  REQUIRE(tr.status == "ok");
  double omega = s.gamma / (s.mass + kPi);
  double worst = 0;
  for (size_t i = 0; i < tr.size(); ++i)
    worst = std::max(worst, (tr.h[i] - orbit_position(s.h0, s.ell0, omega, tr.t[i])).norm());
  return worst;
}
}  // namespace

TEST_CASE("closed-form orbit helper") {
  // centre h0 + ell0^perp / omega, radius |ell0| / omega
  Vec2 c = perp(Vec2(0.5, 0)) / 1.0;
  for (double t : {0.0, 0.7, 2.0, 5.5}) CHECK((orbit_position(Vec2::Zero(), Vec2(0.5, 0), 1.0, t) - c).norm() == doctest::Approx(0.5));
  Vec2 p = orbit_position(Vec2::Zero(), Vec2(0.5, 0), 1.0, 1e-6);
  CHECK(p.x() == doctest::Approx(0.5e-6).epsilon(1e-6));
}

TEST_CASE("all at rest is a fixed point") {
  Scenario s = parse_scenario_text(preset_scenario_text("disc-at-rest"));
  Trajectory tr = run(s);
  REQUIRE(tr.status == "ok");
  REQUIRE(tr.size() == 101);
  for (size_t i = 0; i < tr.size(); ++i) {
    CHECK(tr.h[i] == Vec2::Zero());
    CHECK(tr.ell[i] == Vec2::Zero());
    CHECK(tr.theta[i] == 0.0);
    CHECK(tr.r[i] == 0.0);
    CHECK(tr.force[i] == Eigen::Vector3d::Zero());
  }
}

TEST_CASE("translating disc keeps its velocity") {
  Scenario s = parse_scenario_text(preset_scenario_text("translating-disc"));
  Trajectory tr = run(s);
  REQUIRE(tr.status == "ok");
  REQUIRE(tr.size() == 101);
  double worst = 0;
  for (size_t i = 0; i < tr.size(); ++i) worst = std::max(worst, (tr.ell[i] - s.ell0).norm());
  CHECK(worst < 1e-4);
  CHECK((tr.h.back() - (s.h0 + s.ell0 * s.duration)).norm() < 1e-4);
}

TEST_CASE("circulation orbit") {
  Scenario s = parse_scenario_text(preset_scenario_text("circulation-orbit"));
  Trajectory tr = run(s);
  REQUIRE(tr.status == "ok");
  double omega = s.gamma / (s.mass + kPi);
  Vec2 centre = s.h0 + perp(s.ell0) / omega;
  double radius = (s.mass + kPi) * s.ell0.norm() / std::abs(s.gamma);
  CHECK(radius == doctest::Approx(0.5));
  for (size_t i = 0; i < tr.size(); ++i)
    CHECK(std::abs((tr.h[i] - centre).norm() - radius) < 0.02 * radius);
  // one full period returns to the start
  CHECK((tr.h.back() - s.h0).norm() < 0.02 * radius);
  CHECK(tr.t.back() == doctest::Approx(2 * kPi / omega));

  double e1 = orbit_error(2 * kPi / 100), e2 = orbit_error(2 * kPi / 200);
  MESSAGE("orbit errors " << e1 << " " << e2 << " ratio " << e1 / e2);
  CHECK(e1 / e2 > 8.0);
  CHECK(std::log2(e1 / e2) > 3.5);
}

TEST_CASE("zero duration gives the initial sample only") {
  Scenario s = parse_scenario_text(preset_scenario_text("translating-disc"));
  s.duration = 0;
  Trajectory tr = run(s);
  CHECK(tr.size() == 1);
  CHECK(tr.t[0] == 0.0);
  ConservationReport rep = conservation_report(tr);
  CHECK(rep.gamma == 0.0);
  CHECK(rep.total_vorticity == 0.0);
}

TEST_CASE("vortex pair next to a free disc") {
  Scenario s = parse_scenario_text(preset_scenario_text("vortex-pair-disc"));
  Trajectory tr = run(s);
  REQUIRE(tr.status == "ok");
  CHECK(tr.size() == 101);
  ConservationReport rep = conservation_report(tr);
  CHECK(rep.gamma < 1e-6);
  CHECK(rep.total_vorticity == 0.0);
  for (int p = 0; p < 4; ++p) CHECK(rep.lp[p] == 0.0);
  CHECK(rep.normal_residual < 1e-6);
  for (double c : tr.compatibility) CHECK(c < 1e-6);
  // the pair pushes the disc
  CHECK(tr.ell.back().norm() > 0);

  // deterministic rerun
  Trajectory again = run(s);
  REQUIRE(again.size() == tr.size());
  bool same = true;
  for (size_t i = 0; i < tr.size(); ++i)
    same = same && tr.h[i] == again.h[i] && tr.ell[i] == again.ell[i] && tr.force[i] == again.force[i] &&
           tr.theta[i] == again.theta[i] && tr.r[i] == again.r[i];
  CHECK(same);
}

TEST_CASE("frame equivariance of the coupled system") {
  VortexField f;
  f.positions = {Vec2(0.2, 2.4), Vec2(-0.5, 2.1), Vec2(2.6, -0.3)};
  f.strengths = {0.6, 0.4, -0.3};
  f.areas = {0.01, 0.01, 0.01};
  f.core_radius = 0.15;
  f.gamma = 0.7;
  RigidState s0;
  s0.ell = Vec2(0.3, -0.1);
  s0.r = 0.2;
  s0.mass = 2.0;
  s0.inertia = 0.8;

  const double beta = 0.9;
  Mat2 q = rotation_matrix(beta);
  SimOptions so;
  so.panels = 64;
  Simulator a(BodyShape::ellipse(1.5, 1.0), so);
  Simulator b(BodyShape::ellipse(1.5, 1.0).rotated(beta), so);
  SimState ia{0, s0, f, {}};
  SimState ib = ia;
  ib.rigid.ell = q * s0.ell;
  for (auto& p : ib.field.positions) p = q * p;
  Trajectory ta = run(a, ia, 0.02, 0.4, false);
  Trajectory tb = run(b, ib, 0.02, 0.4, false);
  REQUIRE(ta.size() == tb.size());
  double worst = 0;
  for (size_t i = 0; i < ta.size(); ++i) {
    worst = std::max(worst, (q * ta.h[i] - tb.h[i]).norm());
    worst = std::max(worst, (q * ta.ell[i] - tb.ell[i]).norm());
    worst = std::max(worst, std::abs(ta.theta[i] - tb.theta[i]));
    worst = std::max(worst, std::abs(ta.r[i] - tb.r[i]));
  }
  CHECK(worst < 1e-5);
  CHECK(ta.h.back().norm() > 0.05);
}

TEST_CASE("collision flag above the reflection threshold") {
  // a passive tracer inside the disc is carried rigidly and mirrored out
  VortexField f;
  f.positions = {Vec2(0.5, 0.0)};
  f.strengths = {0.0};
  RigidState s;
  s.ell = Vec2(1.0, 0.0);
  SimOptions so;
  so.panels = 32;
  Simulator sim(BodyShape::disc(1), so);
  SimState st{0, s, f, {}};
  CHECK_THROWS_AS(sim.step(st, 0.1), CollisionFlag);
  Trajectory tr = run(sim, st, 0.1, 0.3);
  CHECK(tr.status.find("crossed the boundary") != std::string::npos);
  CHECK(tr.size() == 1);

  // one stray among 1001 particles stays under 0.1%
  for (int i = 0; i < 1000; ++i) {
    f.positions.push_back(Vec2(3.0 + 0.01 * (i % 40), 0.01 * (i / 40)));
    f.strengths.push_back(0.0);
  }
  StepLog log;
  SimState next = sim.step(SimState{0, s, f, {}}, 0.1, &log);
  CHECK(log.reflections == 1);
  CHECK(next.field.positions[0].norm() > 1.0 + 0.1);
}

TEST_CASE("step rejects a non-positive dt") {
  Simulator sim(BodyShape::disc(1), SimOptions{.panels = 32});
  CHECK_THROWS(sim.step(SimState{}, 0.0));
}
