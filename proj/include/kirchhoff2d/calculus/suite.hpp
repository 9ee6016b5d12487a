#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kirchhoff2d/calculus/boundary_terms.hpp"
#include "kirchhoff2d/calculus/combinatorics.hpp"
#include "kirchhoff2d/calculus/lowfreq.hpp"
#include "kirchhoff2d/calculus/normal_form.hpp"
#include "kirchhoff2d/calculus/words.hpp"

namespace kirchhoff2d::calculus {

struct SuiteOptions {
  int max_k = 4;       // identities on instances for the interior and boundary expansions
  int max_n = 3;       // identities on instances for the low-frequency forms
  int bound_k = 6;     // coefficient bounds, interior and boundary
  int bound_n = 4;     // coefficient bounds, low-frequency forms
  int instances = 20;  // random instances per identity
  std::uint64_t seed = 1;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  int cases = 0;
  std::string detail;
  double seconds = 0;
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  std::vector<CoefficientEntry> coefficients;
  bool passed() const;
  std::string summary() const;
};

SuiteReport run_identity_suite(const SuiteOptions& opts = {});

// the individual pieces, each returning the number of verified cases or throwing
int check_index_sets(int max_k);
int check_upsilon(int max_s, int max_m);
int check_holder(int max_k);
int check_commutation_rules(const SuiteOptions& o);
int check_div_curl_expansions(const SuiteOptions& o);
int check_normal_trace(const SuiteOptions& o);
int check_grad_commutator(const SuiteOptions& o);
int check_lowfreq_div(const SuiteOptions& o);
int check_lowfreq_curl(const SuiteOptions& o);
std::vector<CoefficientEntry> coefficient_tables(const SuiteOptions& o);

}  // namespace kirchhoff2d::calculus
