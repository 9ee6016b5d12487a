#include "kirchhoff2d/calculus/suite.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "kirchhoff2d/errors.hpp"

namespace kirchhoff2d::calculus {

namespace {
void require(bool ok, const std::string& what) {
  if (!ok) throw Error(what);
}

std::string at(const char* what, int k, std::uint64_t seed) {
  return std::string(what) + " (k=" + std::to_string(k) + ", seed " + std::to_string(seed) + ")";
}

std::uint64_t seed_of(const SuiteOptions& o, int i) { return o.seed * 1000003ull + std::uint64_t(i); }
}  // namespace

int check_index_sets(int max_k) {
  int cases = 0;
  for (int k = 1; k <= max_k; ++k) {
    auto a = enumerate_A(k), b = enumerate_A_by_cuts(k);
    require(a == b, "the two enumerators of A_" + std::to_string(k) + " disagree");
    Integer two_k;
    mpz_ui_pow_ui(two_k.get_mpz_t(), 2, k);
    require(Integer(int(a.size())) == count_A_closed(k) && count_A_closed(k) == two_k - 1,
            "|A_" + std::to_string(k) + "| does not match the closed form");
    for (const auto& m : a) require(m.in_A(k), m.str() + " generated but not in A_k");
    for (const auto& m : enumerate_B(k)) require(m.in_B(k), m.str() + " generated but not in B_k");
    // every generated expansion term lies in its index set
    for (const auto& [w, c] : expand_div_Dk(k)) require(word_index(w).in_A(k), "F^k word outside A_k");
    for (const auto& [t, c] : expand_normal_trace(k)) require(t.zeta().in_B(k), "H^k term outside B_k");
    for (int i = 1; i <= 3; ++i)
      for (const auto& [t, c] : expand_DK_i(k, i)) {
        MultiIndex z = t.zeta();
        // the sigma_3 chain carries grad rho{J D^a phi} terms with s + s' = 1
        bool j_family = i == 3 && z.s == 1 && z.abs_sprime() == 0;
        require(z.in_B(k) || (j_family && z.abs_alpha() + 1 == k + 1), "D^k K_i term outside B_k");
      }
    ++cases;
  }
  return cases;
}

int check_upsilon(int max_s, int max_m) {
  require(upsilon_sum(1, 3) == Rational(1, 16), "upsilon(1,3) != 1/16");
  require(upsilon_sum(2, 2) == Rational(1, 16), "upsilon(2,2) != 1/16");
  require(upsilon_sum(2, 4) == Rational(1, 32) + Rational(1, 81), "upsilon(2,4) != 1/32 + 1/81");
  int cases = 3;
  for (int s = 1; s <= max_s; ++s)
    for (int m = s; m <= max_m; ++m) {
      Rational u = upsilon_sum(s, m);
      if (m <= 16) require(u == upsilon_sum_bruteforce(s, m), "upsilon recursion and enumeration disagree");
      require(u * Rational((m + 1) * (m + 1)) <= upsilon_bound(s, m) * Rational((m + 1) * (m + 1)) &&
                  u <= upsilon_bound(s, m),
              "upsilon(" + std::to_string(s) + "," + std::to_string(m) + ") exceeds 20^s/(m+1)^2");
      ++cases;
    }
  return cases;
}

int check_holder(int max_k) {
  int cases = 0;
  for (int k = 1; k <= max_k; ++k)
    for (const auto& th : enumerate_A(k))
      for (const Rational& p : {Rational(k + 1), Rational(2 * k + 3, 2), Rational(17, 3)}) {
        require(holder_exponent_check(k, p, th.alpha), "exponent identity fails for " + th.str());
        ++cases;
      }
  return cases;
}

int check_commutation_rules(const SuiteOptions& o) {
  // formal side: the rewritten forms normalize to the same sums as the raw ones
  EVec psi = field(Sym::Psi);
  NormalForm div_raw = div(D(psi)).normalize(), div_rw = commute_div_D(psi).normalize();
  NormalForm curl_raw = curl(D(psi)).normalize(), curl_rw = commute_curl_D(psi).normalize();
  require(div_raw == div_rw, "formal div D psi rewrite");
  require(curl_raw == curl_rw, "formal curl D psi rewrite");
  int cases = 0;
  for (int n = 0; n < o.instances; ++n) {
    auto in = random_instance(seed_of(o, n));
    require(in.divergence_free(), "instance velocity is not divergence free");
    const PVec& u = in.u;
    // (t3.0)
    const Poly &f = in.psi[0], &g = in.scalar;
    require(material(f * g, u) == material(f, u) * g + f * material(g, u), at("Leibniz rule", 1, in.seed));
    // (t3.1)
    for (int k = 1; k <= 2; ++k) {
      Poly lhs = material(g, u).diff(k) - material(g.diff(k), u);
      Poly rhs = u[0].diff(k) * g.diff(1) + u[1].diff(k) * g.diff(2);
      require(lhs == rhs, at("d_k D - D d_k", 1, in.seed));
    }
    // (t3.2), (t3.3)
    PMat gg = mul(grad(u), grad(in.psi));
    PVec Dp = material(in.psi, u);
    require(div(Dp) - material(div(in.psi), u) == trace(gg), at("div D - D div", 1, in.seed));
    require(curl(Dp) - material(curl(in.psi), u) == antisym(gg)[0][1], at("curl D - D curl", 1, in.seed));
    // and the formal rewrite evaluates to the same polynomials
    Evaluator ev(u, in.psi);
    require(ev(div_rw) == div(Dp), at("formal div rewrite on instance", 1, in.seed));
    require(ev(curl_rw) == curl(Dp), at("formal curl rewrite on instance", 1, in.seed));
    cases += 6;
  }
  return cases;
}

int check_div_curl_expansions(const SuiteOptions& o) {
  std::vector<WordSum> F(o.max_k + 1), G(o.max_k + 1);
  for (int k = 1; k <= o.max_k; ++k) {
    F[k] = expand_div_Dk(k);
    G[k] = expand_curl_Dk(k);
  }
  int cases = 0;
  for (int n = 0; n < o.instances; ++n) {
    auto in = random_instance(seed_of(o, n));
    WordEvaluator we(in, o.max_k);
    auto ddiv = material_powers(div(in.psi), in.u, o.max_k);
    auto dcurl = material_powers(curl(in.psi), in.u, o.max_k);
    for (int k = 1; k <= o.max_k; ++k) {
      const PVec& Dk = we.Dpsi()[k];
      require(div(Dk) - ddiv[k] == trace(we(F[k])), at("div D^k psi expansion", k, in.seed));
      require(curl(Dk) - dcurl[k] == antisym(we(G[k]))[0][1], at("curl D^k psi expansion", k, in.seed));
      cases += 2;
    }
  }
  return cases;
}

int check_normal_trace(const SuiteOptions& o) {
  std::vector<BoundarySum> H(o.max_k + 1);
  std::vector<std::array<BoundarySum, 3>> DK(o.max_k + 1);
  for (int k = 1; k <= o.max_k; ++k) {
    H[k] = expand_normal_trace(k);
    for (int i = 0; i < 3; ++i) DK[k][i] = expand_DK_i(k, i + 1);
  }
  int cases = 0;
  for (int n = 0; n < o.instances; ++n) {
    auto in = random_rigid_instance(seed_of(o, n), o.max_k + 3);
    BoundaryEvaluator be(in, o.max_k + 1);
    PVec nrm = be.normal();
    auto Dpsi = material_powers(in.psi, in.u, o.max_k);
    auto Dnpsi = material_powers(dot(nrm, in.psi), in.u, o.max_k);
    std::vector<std::vector<Poly>> DKi;
    for (int i = 0; i < 3; ++i) DKi.push_back(material_powers(dot(nrm, in.sigma[i]), in.u, o.max_k));
    for (int k = 1; k <= o.max_k; ++k) {
      Poly res = dot(nrm, Dpsi[k]) - Dnpsi[k] - be(H[k], in.psi);
      require(res.trunc() >= 1, "series truncated too early");
      require(res.is_zero(), at("n . D^k psi expansion", k, in.seed));
      ++cases;
      for (int i = 0; i < 3; ++i) {
        LastSlot mode = i == 2 ? LastSlot::Rotational : LastSlot::Constant;
        Poly r = DKi[i][k] - be(DK[k][i], in.sigma[i], mode);
        require(r.trunc() >= 1 && r.is_zero(), at(("D^k K_" + std::to_string(i + 1) + " expansion").c_str(), k, in.seed));
        ++cases;
      }
    }
  }
  return cases;
}

int check_grad_commutator(const SuiteOptions& o) {
  int cases = 0;
  for (int k = 1; k <= o.bound_k; ++k) {
    require(expand_grad_commutator(k) == iterate_grad_commutator(k), at("closed form K^k vs iterated rule", k, 0));
    ++cases;
  }
  std::vector<WordSum> K(o.max_k + 1);
  for (int k = 1; k <= o.max_k; ++k) K[k] = expand_grad_commutator(k);
  for (int n = 0; n < o.instances; ++n) {
    auto in = random_instance(seed_of(o, n));
    WordEvaluator we(in, o.max_k);
    for (int k = 1; k <= o.max_k; ++k) {
      const PMat& C = we.letter({'C', k});
      PVec g = grad(we.Dscalar()[k]);
      PMat Kv = we(K[k]);
      require(C[0][0] - g[0] == Kv[0][0] && C[1][0] - g[1] == Kv[1][0], at("D^k grad f expansion", k, in.seed));
      ++cases;
    }
  }
  return cases;
}

int check_lowfreq_div(const SuiteOptions& o) {
  DivForms plain = lowfreq_div_forms(o.max_n, false), full = lowfreq_div_forms(o.max_n, true);
  int cases = 0;
  for (int n = 0; n < o.instances; ++n) {
    auto in = random_instance(seed_of(o, n));
    verify_div_forms(plain, make_div_instance(in, DivInstanceKind::DivergenceFree));
    verify_div_forms(full, make_div_instance(in, DivInstanceKind::DivergenceFree));
    verify_div_forms(full, make_div_instance(in, DivInstanceKind::WithPhiHat));
    verify_div_forms(full, make_div_instance(in, DivInstanceKind::VelocityStress));
    cases += 4;
  }
  return cases;
}

int check_lowfreq_curl(const SuiteOptions& o) {
  CurlForms f = lowfreq_curl_forms(o.max_n);
  int cases = 0;
  for (int n = 0; n < o.instances; ++n) {
    verify_curl_forms(f, random_instance(seed_of(o, n)));
    ++cases;
  }
  return cases;
}

std::vector<CoefficientEntry> coefficient_tables(const SuiteOptions& o) {
  std::vector<CoefficientEntry> rows;
  auto append = [&](std::vector<CoefficientEntry> r) { rows.insert(rows.end(), r.begin(), r.end()); };
  for (int k = 1; k <= o.bound_k; ++k) {
    append(word_table("F", k, expand_div_Dk(k)));
    append(word_table("G", k, expand_curl_Dk(k)));
    append(word_table("K", k, expand_grad_commutator(k)));
    append(boundary_table("H", k, expand_normal_trace(k)));
    for (int i = 1; i <= 3; ++i) append(boundary_table("DK" + std::to_string(i), k, expand_DK_i(k, i)));
  }
  append(div_tables(lowfreq_div_forms(o.bound_n, true)));
  append(curl_tables(lowfreq_curl_forms(o.bound_n)));
  return rows;
}

bool SuiteReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

std::string SuiteReport::summary() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2fs", c.seconds);
    out << (c.passed ? "PASS " : "FAIL ") << c.name << "  [" << c.cases << " cases, " << buf << "]";
    if (!c.detail.empty()) out << "  " << c.detail;
    out << "\n";
  }
  return out.str();
}

SuiteReport run_identity_suite(const SuiteOptions& o) {
  SuiteReport rep;
  auto run = [&](const std::string& name, const std::function<int()>& body) {
    CheckResult c;
    c.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.cases = body();
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.checks.push_back(std::move(c));
  };
  run("index sets A_k, B_k", [&] { return check_index_sets(std::max(8, o.bound_k)); });
  run("upsilon sums and the 20^s/(m+1)^2 bound", [&] { return check_upsilon(5, 30); });
  run("Holder exponent bookkeeping", [&] { return check_holder(8); });
  run("Leibniz and commutation rules", [&] { return check_commutation_rules(o); });
  run("div/curl D^k psi expansions", [&] { return check_div_curl_expansions(o); });
  run("normal trace and D^k K_i expansions", [&] { return check_normal_trace(o); });
  run("gradient commutator K^k", [&] { return check_grad_commutator(o); });
  run("low-frequency div forms", [&] { return check_lowfreq_div(o); });
  run("low-frequency curl forms", [&] { return check_lowfreq_curl(o); });
  run("coefficient bounds", [&] {
    rep.coefficients = coefficient_tables(o);
    int bad = 0;
    std::string first;
    for (const auto& r : rep.coefficients)
      if (!r.within_bound()) {
        if (!bad) {
          try {
            check_bounds({r});
          } catch (const BoundViolation& e) {
            first = e.what();
          }
        }
        ++bad;
      }
    if (bad) throw BoundViolation(std::to_string(bad) + " coefficients exceed their bound; first: " + first);
    return int(rep.coefficients.size());
  });
  return rep;
}

}  // namespace kirchhoff2d::calculus
