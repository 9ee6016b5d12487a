#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "kirchhoff2d/dynamics.hpp"
#include "kirchhoff2d/errors.hpp"
#include "kirchhoff2d/gevrey.hpp"
#include "kirchhoff2d/output.hpp"

using namespace kirchhoff2d;

TEST_CASE("fit recovers constructed sequences") {
  for (double M : {0.0, 1.0, 2.0, 3.0})
    for (double L : {0.5, 2.0, 10.0}) {
      GevreyFit f = fit_gevrey(synthetic_sequence(1.7, L, M, 12));
      CHECK(std::abs(f.M - M) < 0.1);
      CHECK(std::abs(f.L - L) < 0.1 * L);
      CHECK(f.C == doctest::Approx(1.7).epsilon(1e-6));
      CHECK(f.residual < 1e-8);
    }
  // (k!)^2
  GevreyFit sq = fit_gevrey(synthetic_sequence(1, 1, 2, 12));
  CHECK(std::abs(sq.M - 2) < 0.1);
  // k! 3^k
  GevreyFit f3 = fit_gevrey(synthetic_sequence(1, 3, 1, 12));
  CHECK(std::abs(f3.M - 1) < 0.1);
  CHECK(std::abs(f3.L - 3) < 0.3);
}

TEST_CASE("fit is scale equivariant and monotone in M") {
  DerivativeSequence s = synthetic_sequence(1, 2, 1.3, 12);
  for (size_t i = 0; i < s.size(); ++i) s.magnitudes[i] *= 1 + 0.05 * std::sin(3.0 * i);  // break exactness
  GevreyFit a = fit_gevrey(s);
  DerivativeSequence t = s;
  for (auto& m : t.magnitudes) m *= 1234.5;
  GevreyFit b = fit_gevrey(t);
  CHECK(std::abs(a.M - b.M) < 1e-10);
  CHECK(std::abs(a.L / b.L - 1) < 1e-10);
  CHECK(b.C / a.C == doctest::Approx(1234.5).epsilon(1e-9));

  double prev = -1e9;
  for (double M : {0.2, 0.5, 1.1, 1.6, 2.4}) {
    DerivativeSequence u = synthetic_sequence(1, 2, M, 12);
    for (size_t i = 0; i < u.size(); ++i) u.magnitudes[i] *= 1 + 0.05 * std::sin(3.0 * i);
    double m = fit_gevrey(u).M;
    CHECK(m > prev);
    prev = m;
  }
}

TEST_CASE("fit rejects too few or degenerate orders") {
  DerivativeSequence s = synthetic_sequence(1, 2, 1, 1);
  CHECK_THROWS_AS(fit_gevrey(s), NoiseFloor);
  DerivativeSequence z = synthetic_sequence(1, 2, 1, 6);
  z.magnitudes[3] = 0;
  CHECK_THROWS_AS(fit_gevrey(z), NoiseFloor);
  // duplicate orders make [1, k, ln k!] singular
  DerivativeSequence d;
  d.orders = {2, 2, 2, 2};
  d.magnitudes = {1, 2, 3, 4};
  CHECK_THROWS_AS(fit_gevrey(d), IllConditioned);
}

TEST_CASE("spectral derivatives of closed-form functions") {
  const double pi = std::numbers::pi;
  SUBCASE("polynomial") {
    DerivativeSequence s = spectral_derivatives([](double t) { return t * t; }, -1, 1, 512, 4);
    // interior half window [-1/2, 1/2]: |t^2| <= 1/4, |2t| <= 1, 2
    CHECK(s.magnitudes[0] == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(s.magnitudes[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.magnitudes[2] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(s.magnitudes[3] < 1e-8);
    CHECK(s.magnitudes[4] < 1e-8);
    CHECK(s.usable_to == 2);
  }
  SUBCASE("sine") {
    // window long enough that the half window contains a crest
    DerivativeSequence s = spectral_derivatives([](double t) { return std::sin(t); }, -pi, pi, 512, 8);
    for (int k = 0; k <= 8; ++k) CHECK(s.magnitudes[k] == doctest::Approx(1.0).epsilon(0.05));
    GevreyFit f = fit_gevrey(s);
    CHECK(std::abs(f.M) < 0.15);
  }
  SUBCASE("pole at t = 1") {
    // sup over [-1/4, 1/4] of k!/(1-t)^(k+1) is k! (4/3)^(k+1)
    DerivativeSequence s = spectral_derivatives([](double t) { return 1 / (1 - t); }, -0.5, 0.5, 512, 8);
    for (int k = 0; k <= 8; ++k) {
      double exact = std::tgamma(k + 1.0) * std::pow(4.0 / 3.0, k + 1);
      CHECK(s.magnitudes[k] == doctest::Approx(exact).epsilon(0.05));
    }
    GevreyFit f = fit_gevrey(s);
    CHECK(std::abs(f.M - 1) < 0.1);
    CHECK(std::abs(f.L - 4.0 / 3.0) < 0.1 * 4.0 / 3.0);
  }
  SUBCASE("analytic, k <= 8, 512 samples") {
    auto g = [](double t) { return std::exp(0.7 * t) * std::cos(2 * t); };
    DerivativeSequence s = spectral_derivatives(g, -1, 1, 512, 8);
    // derivatives of Re exp((0.7 + 2i) t): |z|^k exp(0.7 t) cos(2t + k arg z)
    std::complex<double> z(0.7, 2.0);
    for (int k = 0; k <= 8; ++k) {
      double sup = 0;
      for (int p = 0; p <= 4000; ++p) {
        double t = -0.5 + p / 4000.0;
        sup = std::max(sup, std::abs(std::pow(std::abs(z), k) * std::exp(0.7 * t) * std::cos(2 * t + k * std::arg(z))));
      }
      CHECK(s.magnitudes[k] == doctest::Approx(sup).epsilon(0.05));
    }
  }
  SUBCASE("noise floor") {
    CHECK_THROWS_AS(spectral_derivatives([](double) { return 3.0; }, -1, 1, 64, 6), NoiseFloor);
    CHECK_THROWS_AS(spectral_derivatives([](double t) { return 1 + 2 * t; }, -1, 1, 64, 6), NoiseFloor);
    CHECK_THROWS(spectral_derivatives([](double t) { return t; }, -1, 1, 10, 6));
  }
}

TEST_CASE("trajectory report on the circulation orbit") {
  Scenario s = parse_scenario_text(preset_scenario_text("circulation-orbit"));
  Trajectory tr = run(s);
  REQUIRE(tr.status == "ok");
  CsvTable table = parse_csv(trajectory_csv(tr));
  auto rep = trajectory_gevrey_report(table);
  REQUIRE(rep.size() == 3);
  double omega = s.gamma / (s.mass + std::numbers::pi);
  for (int c = 0; c < 2; ++c) {
    INFO(rep[c].name << " " << rep[c].message);
    REQUIRE(rep[c].status == "ok");
    MESSAGE(rep[c].name << ": M = " << rep[c].fit.M << " L = " << rep[c].fit.L << " orders " << rep[c].fit.usable_from
                        << ".." << rep[c].fit.usable_to);
    CHECK(std::abs(rep[c].fit.M) < 0.15);
    CHECK(std::abs(rep[c].fit.L - omega) < 0.15 * omega);
  }
  // the disc does not spin
  CHECK(rep[2].status == "degenerate");
  auto j = gevrey_report_json(rep);
  CHECK(j["channels"].size() == 3);
  CHECK(gevrey_report_svg(rep[0]).find("<svg") == 0);
}

TEST_CASE("straight-line trajectory is flagged degenerate") {
  Scenario s = parse_scenario_text(preset_scenario_text("translating-disc"));
  CsvTable table = parse_csv(trajectory_csv(run(s)));
  for (const auto& ch : trajectory_gevrey_report(table)) CHECK(ch.status == "degenerate");
}
