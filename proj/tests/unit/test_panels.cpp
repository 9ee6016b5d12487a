#include <doctest.h>

#include <cmath>
#include <array>
#include <numbers>

#include "kirchhoff2d/errors.hpp"
#include "kirchhoff2d/panels.hpp"

using namespace kirchhoff2d;

namespace {
constexpr double kPi = std::numbers::pi;

// perimeter of an ellipse from the complete elliptic integral, evaluated by the AGM
double ellipse_perimeter(double a, double b) {
  double k2 = 1 - (b * b) / (a * a);
  double x = 1, y = std::sqrt(1 - k2), sum = 0.5 * k2, pw = 0.5;
  for (int i = 0; i < 30; ++i) {
    double c = 0.5 * (x - y);
    double nx = 0.5 * (x + y), ny = std::sqrt(x * y);
    x = nx, y = ny;
    pw *= 2;
    sum += pw * c * c;
  }
  double K = kPi / (2 * x);
  double E = K * (1 - sum);
  return 4 * a * E;
}

// closed-form Kirchhoff potential of the unit disc at the origin, Phi_1 = -x1/|x|^2
Vec2 disc_phi1_grad(Vec2 x) {
  double r2 = x.squaredNorm();
  return Vec2(-(x.y() * x.y() - x.x() * x.x()) / (r2 * r2), 2 * x.x() * x.y() / (r2 * r2));
}

FourierCoeffs wobbly() { return {{0, 1.0, 0.12, 0.0}, {0, 0.0, 0.04, 0}, {0, 0.0, 0.0, 0.03}, {0, 0.8, 0.05, 0}}; }
}  // namespace

TEST_CASE("panel quadrature identities") {
  RigidState st;
  PanelSystem d = build_panels(BodyShape::disc(1), st, 64);
  CHECK(std::abs(d.weights().sum() - 2 * kPi) < 1e-6);
  PanelSystem e = build_panels(BodyShape::ellipse(2, 1), st, 128);
  CHECK(std::abs(e.weights().sum() - ellipse_perimeter(2, 1)) < 1e-6);
  st.h = Vec2(0.4, -1);
  st.theta = 0.3;
  for (const auto& p : {d, e, build_panels(BodyShape::fourier(wobbly()), st, 96)}) {
    Vec2 s = Vec2::Zero();
    for (int i = 0; i < p.size(); ++i) s += p.normals()[i] * p.weights()[i];
    CHECK(s.norm() < 1e-8);
    for (int a = 1; a <= 3; ++a) {
      RigidState ps;
      ps.h = p.h();
      ps.theta = p.theta();
      CHECK(std::abs(neumann_data_K(p, ps, a).dot(p.weights())) < 1e-8);
    }
  }
}

TEST_CASE("Kirchhoff data on the unit disc") {
  RigidState st;
  st.h = Vec2(0.5, 0.25);
  PanelSystem p = build_panels(BodyShape::disc(1), st, 64);
  Eigen::VectorXd k1 = neumann_data_K(p, st, 1), k3 = neumann_data_K(p, st, 3);
  for (int i = 0; i < p.size(); ++i) {
    Vec2 rel = p.nodes()[i] - st.h;
    double phi = std::atan2(rel.y(), rel.x());
    CHECK(std::abs(k1[i] + std::cos(phi)) < 1e-12);
    CHECK(std::abs(k3[i]) < 1e-12);
  }
}

TEST_CASE("exterior Neumann solves") {
  RigidState st;
  PanelSystem p = build_panels(BodyShape::disc(1), st, 128);
  HarmonicPotential z = solve_exterior_neumann(p, Eigen::VectorXd::Zero(p.size()));
  CHECK(z.density.norm() == 0.0);
  CHECK(potential_gradient(z, p, Vec2(2, 1)).norm() == 0.0);

  HarmonicPotential phi1 = solve_exterior_neumann(p, neumann_data_K(p, st, 1));
  CHECK(std::abs(phi1.total_density) < 1e-12);
  for (Vec2 x : {Vec2(2, 0), Vec2(0, 2), Vec2(1.3, -0.9)})
    CHECK((potential_gradient(phi1, p, x) - disc_phi1_grad(x)).norm() < 1e-4);
  CHECK(std::abs(potential_value(phi1, p, Vec2(2, 0)) + 0.5) < 1e-6);
  // near the boundary the upsampled quadrature keeps the accuracy
  Vec2 near(1.01 * std::cos(0.3), 1.01 * std::sin(0.3));
  CHECK((potential_gradient(phi1, p, near) - disc_phi1_grad(near)).norm() < 1e-4);
  // boundary traces
  auto g = boundary_gradient(phi1, p);
  for (int i = 0; i < p.size(); ++i) {
    CHECK(std::abs(phi1.trace[i] + p.nodes()[i].x()) < 1e-8);
    CHECK((g[i] - disc_phi1_grad(p.nodes()[i])).norm() < 1e-8);
  }
  CHECK_THROWS_AS(potential_gradient(phi1, p, Vec2(0.5, 0)), InsideBody);
  CHECK_THROWS_AS(solve_exterior_neumann(p, Eigen::VectorXd::Ones(p.size())), IncompatibleData);
}

TEST_CASE("boundary residual decreases under refinement") {
  RigidState st;
  FourierCoeffs star{{0, 1, 0, 0, 0, 0, 0, 0, 0.06}, {0, 0, 0, 0, 0, 0.05, 0, 0, 0},
                     {0, 0, 0, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0, 0.05, 0}};
  for (const BodyShape& shape : {BodyShape::ellipse(6, 1), BodyShape::fourier(star)}) {
    std::array<double, 3> prev{1e300, 1e300, 1e300};
    for (int n : {64, 128, 256}) {
      PanelSystem p = build_panels(shape, st, n);
      for (int a = 1; a <= 3; ++a) {
        HarmonicPotential phi = solve_exterior_neumann(p, neumann_data_K(p, st, a));
        double res = neumann_residual(phi, p, [&](double s) { return neumann_K_at(p, st, a, s); });
        CHECK(res < prev[a - 1]);
        prev[a - 1] = res;
      }
    }
    for (double r : prev) CHECK(r < 1e-5);
  }
}

TEST_CASE("far-field decay") {
  RigidState st;
  PanelSystem p = build_panels(BodyShape::ellipse(2, 1), st, 128);
  HarmonicPotential phi = solve_exterior_neumann(p, neumann_data_K(p, st, 2));
  double gmax = 0, gmin = 1e300, vmax = 0;
  for (double r : {10.0, 31.6, 100.0, 316.0, 1000.0}) {
    Vec2 x(r * std::cos(0.4), r * std::sin(0.4));
    double g = potential_gradient(phi, p, x).norm() * r * r;
    gmax = std::max(gmax, g);
    gmin = std::min(gmin, g);
    vmax = std::max(vmax, std::abs(potential_value(phi, p, x)) * r);
  }
  CHECK(gmax < 2 * gmin);
  CHECK(vmax < 10);
}

TEST_CASE("added mass of disc and ellipse") {
  RigidState st;
  st.mass = 2;
  st.inertia = 0.5;
  AddedMassTensor d = added_mass(build_panels(BodyShape::disc(1), st, 256), st);
  CHECK(std::abs(d.m2(0, 0) - kPi) < 0.01 * kPi);
  CHECK(std::abs(d.m2(1, 1) - kPi) < 0.01 * kPi);
  CHECK(std::abs(d.m2(2, 2)) < 1e-8);
  CHECK(std::abs(d.m2(0, 1)) < 1e-8);
  CHECK((d.m2 - d.m2.transpose()).norm() < 1e-10);
  CHECK(d.raw_asymmetry < 1e-8);
  CHECK(d.m1(0, 0) == 2.0);
  CHECK(d.m1(2, 2) == 0.5);
  Eigen::Vector3d x = d.solve(Eigen::Vector3d(1, 2, 3));
  CHECK((d.m * x - Eigen::Vector3d(1, 2, 3)).norm() < 1e-12);

  AddedMassTensor e = added_mass(build_panels(BodyShape::ellipse(2, 1), st, 256), st);
  CHECK(std::abs(e.m2(0, 0) - kPi) < 0.02 * kPi);
  CHECK(std::abs(e.m2(1, 1) - 4 * kPi) < 0.02 * 4 * kPi);
  // rotational entry of the ellipse, pi (a^2 - b^2)^2 / 8
  CHECK(std::abs(e.m2(2, 2) - kPi * 9 / 8) < 0.02 * kPi * 9 / 8);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(e.m2);
  CHECK(es.eigenvalues().minCoeff() > 0.1);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> ds(d.m2);
  CHECK(ds.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("added mass invariance under rigid displacement") {
  RigidState a, b;
  b.h = Vec2(3, -2);
  CHECK(invariance_check(BodyShape::ellipse(2, 1), a, b, 128) < 1e-6);
  b.theta = 1.1;
  CHECK(invariance_check(BodyShape::disc(1), a, b, 128) < 1e-6);
  b.theta = kPi;
  CHECK(invariance_check(BodyShape::ellipse(2, 1), a, b, 128) < 1e-6);
  b.theta = 0.77;
  CHECK(invariance_check(BodyShape::fourier(wobbly()), a, b, 128) < 1e-6);

  // transported potentials reproduce a direct solve at the moved pose
  PanelSystem body = build_panels(BodyShape::ellipse(2, 1), RigidState{}, 128);
  KirchhoffPotentials k(body);
  PanelSystem moved = body.moved(b);
  auto w = k.world(b.theta);
  for (int a2 = 1; a2 <= 3; ++a2) {
    HarmonicPotential direct = solve_exterior_neumann(moved, neumann_data_K(moved, b, a2));
    CHECK((direct.density - w[a2 - 1].density).norm() < 1e-9);
  }
  CHECK((k.m2_world(b.theta) - KirchhoffPotentials(moved).m2_body()).norm() < 1e-9);
}

TEST_CASE("degenerate parametrisations are rejected") {
  CHECK_THROWS_AS(build_panels(BodyShape::ellipse(1, 0.005), RigidState{}, 64), DegenerateShape);
  CHECK_THROWS(build_panels(BodyShape::disc(1), RigidState{}, 8));
}
