#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "kirchhoff2d/calculus/combinatorics.hpp"
#include "kirchhoff2d/calculus/instances.hpp"

namespace kirchhoff2d::calculus {

// R_beta[r] D^a v with R(q) = q J; the R factors commute, so beta is kept sorted
struct Slot {
  std::vector<int> beta;
  int a = 0;
  auto operator<=>(const Slot&) const = default;
};

// grad^s rho {phi slots..., last slot}; the phi slots are symmetric and kept sorted
struct BoundaryTerm {
  std::vector<Slot> phi;
  Slot last;
  auto operator<=>(const BoundaryTerm&) const = default;

  int s() const { return int(phi.size()) + 1; }
  MultiIndex zeta() const;
  std::string str() const;
};

using BoundarySum = std::map<BoundaryTerm, Integer>;

// what D does to the last slot:
//   Generic    D^a psi -> D^{a+1} psi
//   Constant   sigma = e_i, D sigma = 0
//   Rotational sigma_3 = (x-h)^perp, where D sigma_3 - R(r) sigma_3 = J phi;
//              the last slot then means J D^{a-1} phi for a >= 1
enum class LastSlot { Generic, Constant, Rotational };

// D(grad^s rho {v...}) = grad^{s+1} rho {phi, v...} + sum_i grad^s rho {.., D v_i - R(r) v_i, ..}
BoundarySum material(const BoundarySum& s, LastSlot mode = LastSlot::Generic);

// n . D^k psi - D^k (n . psi) with n = -grad rho (rho grows into the fluid)
BoundarySum expand_normal_trace(int k);
// D^k K_i, K_i = n . sigma_i, i = 1, 2, 3
BoundarySum expand_DK_i(int k, int i);

// |d| <= 3^{s+s'} k! / (alpha! (s-1)!)
std::vector<CoefficientEntry> boundary_table(const std::string& family, int k, const BoundarySum& s);

// truncated Taylor series of a boundary term sum on an instance; `last` is psi or sigma_i
class BoundaryEvaluator {
 public:
  BoundaryEvaluator(const RigidSeriesInstance& in, int max_order);
  Poly operator()(const BoundarySum& s, const PVec& last, LastSlot mode = LastSlot::Generic);

  const std::vector<PVec>& Dphi() const { return dphi_; }
  PVec normal() const;  // -grad rho

 private:
  const Poly& rho_derivative(int n1, int n2);
  PVec slot_value(const Slot& sl, const std::vector<PVec>& chain, bool rotational);
  const RigidSeriesInstance& in_;
  std::vector<PVec> dphi_;
  std::vector<Poly> dr_;  // r, r', r'', ...
  std::map<std::pair<int, int>, Poly> drho_;
  int max_order_;
};

}  // namespace kirchhoff2d::calculus
