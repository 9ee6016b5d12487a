// one PASS/FAIL line per acceptance criterion; exit status 1 if any fails
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "kirchhoff2d/calculus/suite.hpp"
#include "kirchhoff2d/dynamics.hpp"
#include "kirchhoff2d/gevrey.hpp"
#include "kirchhoff2d/output.hpp"
#include "kirchhoff2d/panels.hpp"
#include "kirchhoff2d/scenario.hpp"

using namespace kirchhoff2d;
constexpr double kPi = std::numbers::pi;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool c, const std::string& what) {
    if (!c) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

Scenario preset(const char* name) { return parse_scenario_text(preset_scenario_text(name)); }

void added_mass_oracles(Outcome& o) {
  RigidState st;
  AddedMassTensor d = added_mass(build_panels(BodyShape::disc(1), st, 256), st);
  double e = std::max(std::abs(d.m2(0, 0) - kPi), std::abs(d.m2(1, 1) - kPi)) / kPi;
  double sym = (d.m2 - d.m2.transpose()).norm();
  o.require(e < 0.01 && std::abs(d.m2(2, 2)) < 0.01 * kPi, "disc M2 = diag(pi, pi, 0)");
  o.require(sym < 1e-10, "M2 symmetric");
  // ellipse with semi-axes (2, 1): pi b^2 along the long axis, pi a^2 across it
  AddedMassTensor el = added_mass(build_panels(BodyShape::ellipse(2, 1), st, 256), st);
  double ee = std::max(std::abs(el.m2(0, 0) - kPi) / kPi, std::abs(el.m2(1, 1) - 4 * kPi) / (4 * kPi));
  o.require(ee < 0.02, "ellipse translational entries");
  o.detail << "disc rel err " << e << ", |M2-M2^T| " << sym << ", ellipse rel err " << ee;
}

void rest_and_dalembert(Outcome& o) {
  Trajectory rest = run(preset("disc-at-rest"));
  bool still = rest.status == "ok";
  for (size_t i = 0; i < rest.size(); ++i)
    still = still && rest.h[i] == Vec2::Zero() && rest.ell[i] == Vec2::Zero() && rest.theta[i] == 0 &&
            rest.r[i] == 0 && rest.force[i] == Eigen::Vector3d::Zero();
  o.require(still, "rest state exactly stationary");
  Scenario s = preset("translating-disc");
  Trajectory tr = run(s);
  double worst = 0;
  for (size_t i = 0; i < tr.size(); ++i) worst = std::max(worst, (tr.ell[i] - s.ell0).norm());
  o.require(tr.status == "ok" && tr.size() == 101, "100 steps");
  o.require(worst < 1e-4, "|ell - ell0| < 1e-4");
  o.detail << "rest exact " << (still ? "yes" : "no") << ", max |ell - ell0| " << worst << " over "
           << tr.size() - 1 << " steps";
}

Vec2 orbit_position(Vec2 h0, Vec2 ell0, double omega, double t) {
  return h0 + perp(ell0 - rotation_matrix(omega * t) * ell0) / omega;
}

double orbit_error(double dt) {
  Scenario s = preset("circulation-orbit");
  s.dt = dt;
  Trajectory tr = run(s);
  double omega = s.gamma / (s.mass + kPi), worst = 0;
  for (size_t i = 0; i < tr.size(); ++i)
    worst = std::max(worst, (tr.h[i] - orbit_position(s.h0, s.ell0, omega, tr.t[i])).norm());
  return tr.status == "ok" ? worst : INFINITY;
}

void circulation_orbit(Outcome& o) {
  Scenario s = preset("circulation-orbit");
  Trajectory tr = run(s);
  double omega = s.gamma / (s.mass + kPi);
  double radius = (s.mass + kPi) * s.ell0.norm() / std::abs(s.gamma);
  Vec2 centre = s.h0 + perp(s.ell0) / omega;
  double dev = 0;
  for (size_t i = 0; i < tr.size(); ++i) dev = std::max(dev, std::abs((tr.h[i] - centre).norm() - radius) / radius);
  o.require(tr.status == "ok" && std::abs(tr.t.back() - 2 * kPi / omega) < 1e-9, "one full period");
  o.require(dev < 0.02, "orbit radius within 2%");
  double e1 = orbit_error(2 * kPi / 100), e2 = orbit_error(2 * kPi / 200);
  o.require(e1 / e2 >= 8, "dt halving gains >= 8x");
  o.detail << "radius dev " << dev << ", errors " << e1 << " -> " << e2 << " (ratio " << e1 / e2 << ")";
}

void conservation(Outcome& o) {
  double g = 0, nr = 0;
  bool bitwise = true;
  for (const auto& name : preset_names()) {
    Trajectory tr = run(parse_scenario_text(preset_scenario_text(name)));
    o.require(tr.status == "ok", name + " ran");
    ConservationReport c = conservation_report(tr);
    g = std::max(g, c.gamma);
    nr = std::max(nr, c.normal_residual);
    const ConservedQuantities& c0 = tr.conserved.front();
    for (const auto& c : tr.conserved) {
      bitwise = bitwise && c.total_vorticity == c0.total_vorticity;
      for (int p = 0; p < 4; ++p) bitwise = bitwise && c.lp[p] == c0.lp[p];
    }
    for (double r : tr.normal_residual) o.require(r < 1e-6, name + " normal residual");
  }
  o.require(g < 1e-6, "gamma drift");
  o.require(bitwise, "sum Gamma and L^p bitwise constant");
  o.detail << preset_names().size() << " scenarios, gamma drift " << g << ", normal residual " << nr
           << ", aggregates bitwise " << (bitwise ? "constant" : "varying");
}

void identities(Outcome& o) {
  calculus::SuiteOptions opts;  // k <= 4, n <= 3, bounds to k = 6, n = 4, 20 instances
  calculus::SuiteReport rep = calculus::run_identity_suite(opts);
  int cases = 0;
  for (const auto& c : rep.checks) {
    cases += c.cases;
    o.require(c.passed, c.name + ": " + c.detail);
  }
  o.detail << rep.checks.size() << " checks, " << cases << " cases, " << rep.coefficients.size()
           << " coefficients within bound";
}

void upsilon(Outcome& o) {
  using calculus::Rational;
  Rational worst = 0;
  int n = 0;
  for (int s = 1; s <= 5; ++s)
    for (int m = s; m <= 30; ++m) {
      Rational ratio = calculus::upsilon_sum(s, m) / calculus::upsilon_bound(s, m);
      if (ratio > worst) worst = ratio;
      ++n;
    }
  o.require(worst <= 1, "upsilon (m+1)^2 / 20^s <= 1");
  o.detail << n << " pairs, max ratio " << worst.get_d();
}

void gevrey(Outcome& o) {
  double dm = 0, dl = 0;
  for (double M : {0.0, 1.0, 2.0, 3.0})
    for (double L : {0.5, 2.0, 10.0}) {
      GevreyFit f = fit_gevrey(synthetic_sequence(1.3, L, M, 12));
      dm = std::max(dm, std::abs(f.M - M));
      dl = std::max(dl, std::abs(f.L - L) / L);
    }
  o.require(dm <= 0.1 && dl <= 0.1, "synthetic recovery");
  GevreyFit sf = fit_gevrey(spectral_derivatives([](double t) { return std::sin(t); }, -kPi, kPi, 512, 8));
  o.require(std::abs(sf.M) <= 0.15, "sin derivatives M ~ 0");
  Scenario s = preset("circulation-orbit");
  auto rep = trajectory_gevrey_report(parse_csv(trajectory_csv(run(s))));
  double omega = s.gamma / (s.mass + kPi), om = 0, ol = 0;
  for (const auto& ch : rep) {
    if (ch.name == "theta") continue;  // the disc does not spin
    o.require(ch.status == "ok", ch.name + " fitted");
    om = std::max(om, std::abs(ch.fit.M));
    ol = std::max(ol, std::abs(ch.fit.L - omega) / omega);
  }
  o.require(om <= 0.15 && ol <= 0.15, "orbit channels M ~ 0, L ~ frequency");
  o.detail << "synthetic |dM| " << dm << " |dL|/L " << dl << ", sin M " << sf.M << ", orbit |M| " << om
           << " |dL|/L " << ol;
}

void determinism(Outcome& o) {
  bool same = true;
  for (const char* name : {"patch-ellipse", "vortex-pair-disc", "circulation-orbit"}) {
    Scenario s = preset(name);
    same = same && trajectory_csv(run(s)) == trajectory_csv(run(s));
  }
  o.require(same, "repeated runs bitwise identical");
  o.detail << "3 scenarios, trajectory CSV " << (same ? "identical" : "differs");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds, 0 = none
    std::function<void(Outcome&)> body;
  };
  const Criterion all[] = {
      {1, "added mass", 10, added_mass_oracles},
      {2, "rigid equilibrium and d'Alembert", 0, rest_and_dalembert},
      {3, "circulation orbit", 120, circulation_orbit},
      {4, "conservation", 0, conservation},
      {5, "symbolic identities", 300, identities},
      {6, "upsilon bound", 10, upsilon},
      {7, "Gevrey fitter calibration", 0, gevrey},
      {8, "determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : all) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0 && secs > c.limit) {
      o.ok = false;
      o.detail << " [over the " << c.limit << " s budget]";
    }
    std::printf("%s %d %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str(), secs);
    std::fflush(stdout);
    failed += !o.ok;
  }
  return failed ? 1 : 0;
}
