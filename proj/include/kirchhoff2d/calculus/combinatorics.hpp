#pragma once

#include <string>
#include <vector>

#include "kirchhoff2d/calculus/poly.hpp"

namespace kirchhoff2d::calculus {

// (s, alpha) for the interior index sets, (s, s', alpha) for the boundary ones
struct MultiIndex {
  int s = 0;
  std::vector<int> alpha;
  std::vector<int> sprime;  // empty outside the boundary sets

  int abs_alpha() const;
  int abs_sprime() const;
  bool in_A(int k) const;  // 2 <= s <= k+1, |alpha| = k+1-s, alpha in N^s
  bool in_B(int k) const;  // 2 <= s+s' <= k+1, |alpha|+s+s' = k+1, alpha in N^{s+s'}
  std::string str() const;
  auto operator<=>(const MultiIndex&) const = default;
};

Integer factorial(int n);
Integer binomial(int n, int k);
Integer alpha_factorial(const std::vector<int>& alpha);

// A_k by recursive generation and by cut points of {1..k}; both sorted
std::vector<MultiIndex> enumerate_A(int k);
std::vector<MultiIndex> enumerate_A_by_cuts(int k);
Integer count_A_closed(int k);  // sum_s C(k, s-1) = 2^k - 1
std::vector<MultiIndex> enumerate_B(int k);

// sum over alpha in (N*)^s with |alpha| = m of prod 1/(1+alpha_i)^2
Rational upsilon_sum(int s, int m);
Rational upsilon_sum_bruteforce(int s, int m);
Rational upsilon_bound(int s, int m);  // 20^s / (m+1)^2

// sum_i (alpha_i+1)/p == (k+1)/p for (s, alpha) in A_k
bool holder_exponent_check(int k, const Rational& p, const std::vector<int>& alpha);

// one row of an exported coefficient table
struct CoefficientEntry {
  std::string family;   // F, G, K, H, DK1, DK2, DK3, phibar, phihat, gammabar, gammahat
  int k = 0;
  std::string index;    // concrete component indices, if any
  MultiIndex theta;
  Integer coeff;
  Integer bound;
  std::string term;

  bool within_bound() const { return abs(coeff) <= bound; }
};

std::string coefficient_csv(const std::vector<CoefficientEntry>& rows);
// throws BoundViolation naming the first offending row
void check_bounds(const std::vector<CoefficientEntry>& rows);

}  // namespace kirchhoff2d::calculus
