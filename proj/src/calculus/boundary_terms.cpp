#include "kirchhoff2d/calculus/boundary_terms.hpp"

#include <algorithm>
#include <stdexcept>

namespace kirchhoff2d::calculus {

MultiIndex BoundaryTerm::zeta() const {
  MultiIndex z;
  z.s = s();
  for (const auto& sl : phi) z.sprime.push_back(int(sl.beta.size()));
  z.sprime.push_back(int(last.beta.size()));
  for (const auto& sl : phi) z.alpha.insert(z.alpha.end(), sl.beta.begin(), sl.beta.end());
  z.alpha.insert(z.alpha.end(), last.beta.begin(), last.beta.end());
  for (const auto& sl : phi) z.alpha.push_back(sl.a);
  z.alpha.push_back(last.a);
  return z;
}

namespace {
std::string slot_str(const Slot& sl, const char* name) {
  std::string o;
  if (!sl.beta.empty()) {
    o += "R[";
    for (size_t i = 0; i < sl.beta.size(); ++i) o += (i ? "," : "") + std::to_string(sl.beta[i]);
    o += "] ";
  }
  if (sl.a == 1) o += "D ";
  else if (sl.a > 1) o += "D^" + std::to_string(sl.a) + " ";
  return o + name;
}

void add_to(BoundarySum& s, BoundaryTerm t, const Integer& c) {
  if (c == 0) return;
  std::sort(t.phi.begin(), t.phi.end());
  for (auto& sl : t.phi) std::sort(sl.beta.begin(), sl.beta.end());
  std::sort(t.last.beta.begin(), t.last.beta.end());
  auto [it, fresh] = s.try_emplace(std::move(t), c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) s.erase(it);
  }
}

// D v - R(r) v for v = R_beta D^a X
std::vector<std::pair<Slot, int>> slot_derivative(const Slot& v, bool bump_a, bool rotate) {
  std::vector<std::pair<Slot, int>> out;
  for (size_t j = 0; j < v.beta.size(); ++j) {
    Slot w = v;
    ++w.beta[j];
    out.push_back({w, 1});
  }
  if (bump_a) {
    Slot w = v;
    ++w.a;
    out.push_back({w, 1});
  }
  if (rotate) {
    Slot w = v;
    w.beta.push_back(0);
    out.push_back({w, -1});
  }
  return out;
}
}  // namespace

std::string BoundaryTerm::str() const {
  std::string o = "grad^" + std::to_string(s()) + " rho{";
  for (const auto& sl : phi) o += slot_str(sl, "phi") + "; ";
  return o + slot_str(last, "X") + "}";
}

BoundarySum material(const BoundarySum& s, LastSlot mode) {
  BoundarySum out;
  for (const auto& [t, c] : s) {
    BoundaryTerm grow = t;
    grow.phi.push_back(Slot{});
    add_to(out, grow, c);
    for (size_t i = 0; i < t.phi.size(); ++i)
      for (const auto& [w, sign] : slot_derivative(t.phi[i], true, true)) {
        BoundaryTerm n = t;
        n.phi[i] = w;
        add_to(out, n, c * sign);
      }
    std::vector<std::pair<Slot, int>> last;
    switch (mode) {
      case LastSlot::Generic: last = slot_derivative(t.last, true, true); break;
      case LastSlot::Constant: last = slot_derivative(t.last, false, true); break;
      case LastSlot::Rotational:
        if (t.last.a == 0) {
          if (!t.last.beta.empty()) throw std::logic_error("rotated sigma_3 slot");
          Slot w = t.last;
          w.a = 1;
          last = {{w, 1}};
        } else {
          last = slot_derivative(t.last, true, true);
        }
        break;
    }
    for (const auto& [w, sign] : last) {
      BoundaryTerm n = t;
      n.last = w;
      add_to(out, n, c * sign);
    }
  }
  return out;
}

BoundarySum expand_normal_trace(int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  // X_j = D X_{j-1} - grad^2 rho{phi, D^{j-1} psi} + grad rho{R(r) D^{j-1} psi}, H^k = -X_k
  BoundarySum X;
  for (int j = 1; j <= k; ++j) {
    X = material(X);
    add_to(X, BoundaryTerm{{Slot{}}, Slot{{}, j - 1}}, -1);
    add_to(X, BoundaryTerm{{}, Slot{{0}, j - 1}}, 1);
  }
  for (auto& kv : X) kv.second = -kv.second;
  return X;
}

BoundarySum expand_DK_i(int k, int i) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (i < 1 || i > 3) throw std::invalid_argument("i must be 1, 2 or 3");
  LastSlot mode = i == 3 ? LastSlot::Rotational : LastSlot::Constant;
  BoundarySum Y;
  add_to(Y, BoundaryTerm{{}, Slot{}}, -1);  // K_i = -grad rho{sigma_i}
  for (int j = 1; j <= k; ++j) Y = material(Y, mode);
  return Y;
}

std::vector<CoefficientEntry> boundary_table(const std::string& family, int k, const BoundarySum& s) {
  std::vector<CoefficientEntry> rows;
  for (const auto& [t, c] : s) {
    CoefficientEntry e;
    e.family = family;
    e.k = k;
    e.theta = t.zeta();
    e.coeff = c;
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 3, e.theta.s + e.theta.abs_sprime());
    // floor of the bound; the coefficient is an integer
    e.bound = (p * factorial(k)) / (alpha_factorial(e.theta.alpha) * factorial(e.theta.s - 1));
    e.term = t.str();
    rows.push_back(std::move(e));
  }
  return rows;
}

BoundaryEvaluator::BoundaryEvaluator(const RigidSeriesInstance& in, int max_order) : in_(in), max_order_(max_order) {
  dphi_ = material_powers(in.phi, in.u, max_order);
  dr_.push_back(in.r);
  for (int n = 1; n <= max_order + 1; ++n) dr_.push_back(dr_.back().diff(0));
}

PVec BoundaryEvaluator::normal() const { return {-in_.rho.diff(1), -in_.rho.diff(2)}; }

const Poly& BoundaryEvaluator::rho_derivative(int n1, int n2) {
  auto key = std::make_pair(n1, n2);
  auto it = drho_.find(key);
  if (it != drho_.end()) return it->second;
  Poly p = n2 > 0 ? rho_derivative(n1, n2 - 1).diff(2) : n1 > 0 ? rho_derivative(n1 - 1, 0).diff(1) : in_.rho;
  return drho_.emplace(key, std::move(p)).first->second;
}

PVec BoundaryEvaluator::slot_value(const Slot& sl, const std::vector<PVec>& chain, bool rotational) {
  PVec v;
  if (rotational && sl.a >= 1) v = perp(dphi_.at(sl.a - 1));
  else v = chain.at(sl.a);
  for (int b : sl.beta) {
    const Poly& q = dr_.at(b);
    v = perp({v[0] * q, v[1] * q});
  }
  return v;
}

Poly BoundaryEvaluator::operator()(const BoundarySum& s, const PVec& last, LastSlot mode) {
  const std::vector<PVec> chain = material_powers(last, in_.u, max_order_);
  Poly sum;
  for (const auto& [t, c] : s) {
    std::vector<PVec> v;
    for (const auto& sl : t.phi) v.push_back(slot_value(sl, dphi_, false));
    v.push_back(slot_value(t.last, chain, mode == LastSlot::Rotational));
    const int n = int(v.size());
    Poly acc;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      int n2 = __builtin_popcount(mask);
      Poly p = rho_derivative(n - n2, n2);
      for (int m = 0; m < n; ++m) p = p * v[m][(mask >> m) & 1];
      acc += p;
    }
    sum += acc * Rational(c);
  }
  return sum;
}

}  // namespace kirchhoff2d::calculus
