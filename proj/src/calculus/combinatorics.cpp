#include "kirchhoff2d/calculus/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "kirchhoff2d/errors.hpp"

namespace kirchhoff2d::calculus {

int MultiIndex::abs_alpha() const { return std::accumulate(alpha.begin(), alpha.end(), 0); }
int MultiIndex::abs_sprime() const { return std::accumulate(sprime.begin(), sprime.end(), 0); }

bool MultiIndex::in_A(int k) const {
  if (!sprime.empty() || s < 2 || s > k + 1 || int(alpha.size()) != s) return false;
  for (int a : alpha)
    if (a < 0) return false;
  return abs_alpha() == k + 1 - s;
}

bool MultiIndex::in_B(int k) const {
  if (s < 1 || int(sprime.size()) != s) return false;
  for (int a : sprime)
    if (a < 0) return false;
  const int sp = abs_sprime();
  if (int(alpha.size()) != s + sp) return false;
  for (int a : alpha)
    if (a < 0) return false;
  return s + sp >= 2 && s + sp <= k + 1 && abs_alpha() + s + sp == k + 1;
}

std::string MultiIndex::str() const {
  std::ostringstream o;
  o << "(" << s;
  if (!sprime.empty()) {
    o << ", (";
    for (size_t i = 0; i < sprime.size(); ++i) o << (i ? "," : "") << sprime[i];
    o << ")";
  }
  o << ", (";
  for (size_t i = 0; i < alpha.size(); ++i) o << (i ? "," : "") << alpha[i];
  o << "))";
  return o.str();
}

Integer factorial(int n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

Integer alpha_factorial(const std::vector<int>& alpha) {
  Integer f = 1;
  for (int a : alpha) f *= factorial(a);
  return f;
}

namespace {
// all alpha in N^parts with |alpha| = total, lexicographic
void compositions(int parts, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = 0; a <= total; ++a) {
    cur.push_back(a);
    compositions(parts - 1, total - a, cur, out);
    cur.pop_back();
  }
}
std::vector<std::vector<int>> compositions(int parts, int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  compositions(parts, total, cur, out);
  return out;
}
}  // namespace

std::vector<MultiIndex> enumerate_A(int k) {
  std::vector<MultiIndex> out;
  for (int s = 2; s <= k + 1; ++s)
    for (auto& a : compositions(s, k + 1 - s)) out.push_back({s, a, {}});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MultiIndex> enumerate_A_by_cuts(int k) {
  // alpha_i + 1 are the gaps of a nonempty set of cut points in {1..k} of [0, k+1]
  std::vector<MultiIndex> out;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    MultiIndex m;
    int prev = 0;
    for (int c = 1; c <= k; ++c)
      if (mask & (1u << (c - 1))) {
        m.alpha.push_back(c - prev - 1);
        prev = c;
      }
    m.alpha.push_back(k + 1 - prev - 1);
    m.s = int(m.alpha.size());
    out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Integer count_A_closed(int k) {
  Integer n = 0;
  for (int s = 2; s <= k + 1; ++s) n += binomial(k, s - 1);
  return n;
}

std::vector<MultiIndex> enumerate_B(int k) {
  std::vector<MultiIndex> out;
  for (int s = 1; s <= k + 1; ++s)
    for (int sp = 0; s + sp <= k + 1; ++sp) {
      if (s + sp < 2) continue;
      for (auto& spr : compositions(s, sp))
        for (auto& a : compositions(s + sp, k + 1 - s - sp)) out.push_back({s, a, spr});
    }
  std::sort(out.begin(), out.end());
  return out;
}

Rational upsilon_sum(int s, int m) {
  if (s < 1 || m < s) throw std::invalid_argument("upsilon_sum needs 1 <= s <= m");
  // dp[j][n]: sum over j positive parts adding up to n
  std::vector<std::vector<Rational>> dp(s + 1, std::vector<Rational>(m + 1, Rational(0)));
  dp[0][0] = 1;
  for (int j = 1; j <= s; ++j)
    for (int n = j; n <= m; ++n)
      for (int a = 1; a <= n - (j - 1); ++a) dp[j][n] += dp[j - 1][n - a] / Rational((1 + a) * (1 + a));
  return dp[s][m];
}

namespace {
void upsilon_rec(int s, int m, const Rational& acc, Rational& sum) {
  if (s == 0) {
    if (m == 0) sum += acc;
    return;
  }
  for (int a = 1; a <= m - (s - 1); ++a) upsilon_rec(s - 1, m - a, acc / Rational((1 + a) * (1 + a)), sum);
}
}  // namespace

Rational upsilon_sum_bruteforce(int s, int m) {
  if (s < 1 || m < s) throw std::invalid_argument("upsilon_sum needs 1 <= s <= m");
  Rational sum = 0;
  upsilon_rec(s, m, Rational(1), sum);
  return sum;
}

Rational upsilon_bound(int s, int m) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 20, s);
  Rational b(p, Integer((m + 1) * (m + 1)));
  b.canonicalize();
  return b;
}

bool holder_exponent_check(int k, const Rational& p, const std::vector<int>& alpha) {
  if (p <= 0) throw std::invalid_argument("exponent p must be positive");
  MultiIndex th{int(alpha.size()), alpha, {}};
  if (!th.in_A(k)) throw std::invalid_argument("index " + th.str() + " is not in A_" + std::to_string(k));
  Rational lhs = 0;
  for (int a : alpha) lhs += Rational(a + 1) / p;
  return lhs == Rational(k + 1) / p;
}

namespace {
std::string quote(const std::string& s) {
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}
std::string join(const std::vector<int>& v) {
  std::string o;
  for (size_t i = 0; i < v.size(); ++i) o += (i ? " " : "") + std::to_string(v[i]);
  return o;
}
}  // namespace

std::string coefficient_csv(const std::vector<CoefficientEntry>& rows) {
  std::string out = "family,k,index,s,sprime,alpha,coeff,bound,term\n";
  for (const auto& r : rows) {
    out += r.family + "," + std::to_string(r.k) + "," + r.index + "," + std::to_string(r.theta.s) + "," +
           join(r.theta.sprime) + "," + join(r.theta.alpha) + "," + r.coeff.get_str() + "," + r.bound.get_str() + "," +
           quote(r.term) + "\n";
  }
  return out;
}

void check_bounds(const std::vector<CoefficientEntry>& rows) {
  for (const auto& r : rows)
    if (!r.within_bound())
      throw BoundViolation(r.family + " k=" + std::to_string(r.k) + (r.index.empty() ? "" : " [" + r.index + "]") +
                           " " + r.theta.str() + ": |" + r.coeff.get_str() + "| > " + r.bound.get_str());
}

}  // namespace kirchhoff2d::calculus
