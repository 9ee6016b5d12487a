#include <doctest.h>

#include <chrono>

#include "kirchhoff2d/calculus/suite.hpp"

using namespace kirchhoff2d::calculus;

namespace {
Word word(std::initializer_list<Letter> l) { return Word(l); }
}  // namespace

TEST_CASE("poly basics") {
  Poly x = Poly::var(1), t = Poly::var(0);
  Poly p = x * x * t + Rational(1, 2) * x;
  CHECK(p.diff(1) == Rational(2) * x * t + Poly::monomial(Rational(1, 2), 0, 0, 0));
  CHECK(p.diff(0) == x * x);
  CHECK((p - p).is_zero());
  // truncation follows the lower order and drops with each derivative
  Poly q = p.truncated(2);
  CHECK(q.trunc() == 2);
  CHECK(q.diff(0).trunc() == 1);
}

TEST_CASE("first order expansions") {
  WordSum F1 = expand_div_Dk(1);
  REQUIRE(F1.size() == 1);
  CHECK(F1.begin()->first == word({{'A', 0}, {'B', 0}}));
  CHECK(F1.begin()->second == 1);
  MultiIndex th = word_index(F1.begin()->first);
  CHECK(th.s == 2);
  CHECK(th.alpha == std::vector<int>{0, 0});
  CHECK(th.in_A(1));

  WordSum K1 = expand_grad_commutator(1);
  REQUIRE(K1.size() == 1);
  CHECK(K1.at(word({{'A', 0}, {'C', 0}})) == -1);

  WordSum K2 = expand_grad_commutator(2);
  CHECK(K2.size() == 2);
  CHECK(K2.at(word({{'A', 1}, {'C', 0}})) == -1);
  CHECK(K2.at(word({{'A', 0}, {'C', 1}})) == -2);
  CHECK(K2 == iterate_grad_commutator(2));

  // n . D psi - D(n . psi) = grad^2 rho{phi, psi} - grad rho{R psi}
  BoundarySum H1 = expand_normal_trace(1);
  CHECK(H1.size() == 2);
  CHECK(H1.at(BoundaryTerm{{Slot{}}, Slot{}}) == 1);
  CHECK(H1.at(BoundaryTerm{{}, Slot{{0}, 0}}) == -1);
}

TEST_CASE("index sets") {
  CHECK(count_A_closed(3) == 7);
  CHECK(enumerate_A(3).size() == 7);
  CHECK(check_index_sets(6) == 6);
  CHECK_THROWS(upsilon_sum(0, 3));
  CHECK_THROWS(upsilon_sum(3, 2));
  CHECK(check_upsilon(3, 12) > 0);
  CHECK(check_holder(5) > 0);
  MultiIndex bad{3, {1, 1, 1}, {}};
  CHECK_FALSE(bad.in_A(2));
  CHECK_THROWS(holder_exponent_check(2, Rational(3), bad.alpha));
}

TEST_CASE("divergence free reduction of div D u") {
  EVec u = field(Sym::U);
  NormalForm lhs = div(D(u)).normalize() - D(div(u)).normalize();
  NormalForm tr;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) tr += NormalForm(Atom::u(l).diff(k)) * NormalForm(Atom::u(k).diff(l));
  CHECK(lhs == tr);
  // with div u = 0 the D div u part is gone, so div D u = tr(grad u grad u) on instances
  auto in = random_instance(3);
  PMat g = grad(in.u);
  CHECK(div(material(in.u, in.u)) == trace(mul(g, g)));
  CHECK(reduce_divergence_free(div(u).normalize()).is_zero());
}

TEST_CASE("normalize is idempotent") {
  EVec psi = field(Sym::Psi);
  Expr e = div(D(D(psi))) * curl(psi);
  NormalForm once = e.normalize();
  CHECK(Expr::from(once).normalize() == once);
  CHECK(material(once) == D(e).normalize());
}

TEST_CASE("constant velocity: commutators vanish") {
  auto in = random_instance(5);
  in.u = {Poly::monomial(Rational(2, 3), 0, 0, 0), Poly::monomial(Rational(-1), 0, 0, 0)};
  WordEvaluator we(in, 3);
  for (int k = 1; k <= 3; ++k) {
    PMat F = we(expand_div_Dk(k)), K = we(expand_grad_commutator(k));
    CHECK(trace(F).is_zero());
    CHECK(K[0][0].is_zero());
    CHECK(K[1][0].is_zero());
  }
}

TEST_CASE("low-frequency base cases") {
  DivForms f = lowfreq_div_forms(0, true);
  REQUIRE(f.hat.size() == 1);
  CHECK(f.hat[0][0][1] == NormalForm(Atom::phi_hat(0, 1)));
  CHECK(f.bar[0][1] == NormalForm(Atom::phi_hat(1, 0).diff(0)) + NormalForm(Atom::phi_hat(1, 1).diff(1)));
  CHECK(lowfreq_div_forms(2, false).bar[0][0].is_zero());
  CurlForms c = lowfreq_curl_forms(1);
  CHECK(c.bar[0][0][0][1].is_zero());
  CHECK(c.bar[1][0][0][1] == NormalForm(Atom::u(0).diff(0)) * NormalForm(Atom::psi(1)) -
                                 NormalForm(Atom::u(0).diff(1)) * NormalForm(Atom::psi(0)));
  auto in = random_instance(11);
  CHECK_NOTHROW(verify_div_forms(lowfreq_div_forms(2, true), make_div_instance(in, DivInstanceKind::WithPhiHat)));
  CHECK_NOTHROW(verify_curl_forms(lowfreq_curl_forms(2), in));
}

TEST_CASE("non-rotating body: every rotated term vanishes") {
  InstanceOptions o;
  o.rotating = false;
  auto in = random_rigid_instance(7, 6, o);
  CHECK(in.r.is_zero());
  BoundaryEvaluator be(in, 4);
  for (int k = 1; k <= 3; ++k) {
    BoundarySum rotated;
    for (const auto& [t, c] : expand_normal_trace(k))
      if (t.zeta().abs_sprime() > 0) rotated[t] = c;
    CHECK(!rotated.empty());
    CHECK(be(rotated, in.psi).is_zero());
  }
}

TEST_CASE("boundary expansions on a rigid series instance") {
  SuiteOptions o;
  o.max_k = 3;
  o.instances = 2;
  CHECK(check_normal_trace(o) == 2 * 3 * 4);
}

TEST_CASE("coefficient rows") {
  auto rows = word_table("K", 2, expand_grad_commutator(2));
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) CHECK(r.within_bound());
  std::string csv = coefficient_csv(rows);
  CHECK(csv.rfind("family,k,index,s,sprime,alpha,coeff,bound,term\n", 0) == 0);
}

TEST_CASE("reduced identity suite") {
  SuiteOptions o;
  o.max_k = 3;
  o.max_n = 2;
  o.bound_k = 4;
  o.bound_n = 2;
  o.instances = 3;
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep = run_identity_suite(o);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  INFO(rep.summary());
  CHECK(rep.passed());
  CHECK(secs < 60);
}
