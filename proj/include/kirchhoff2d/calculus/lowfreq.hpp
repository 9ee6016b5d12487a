#pragma once

#include <array>
#include <vector>

#include "kirchhoff2d/calculus/combinatorics.hpp"
#include "kirchhoff2d/calculus/instances.hpp"
#include "kirchhoff2d/calculus/normal_form.hpp"

namespace kirchhoff2d::calculus {

using NVec = std::array<NormalForm, 2>;
using NMat = std::array<NVec, 2>;
using NTen3 = std::array<NMat, 2>;   // [i][k][l]
using NTen4 = std::array<NTen3, 2>;  // [i][j][k][l]

// div psi = d_i d_j phihat_ij:
//   bar^{n+1}_i  = D bar^n_i - (d_k u_i)(bar^n_k - D^n psi_k),            bar^0_i = d_j phihat_ij
//   hat^{n+1}_ij = D hat^n_ij - hat^n_ik d_k u_j - u_i (bar^n_j - D^n psi_j), hat^0 = phihat
// so that div D^n psi = d_i bar^n_i = d_i d_j hat^n_ij
struct DivForms {
  int n = 0;
  bool with_phi_hat = false;  // false means phihat = 0, i.e. div psi = 0
  std::vector<NVec> bar;      // orders 0..n
  std::vector<NMat> hat;
};
DivForms lowfreq_div_forms(int n, bool with_phi_hat);

// psi a gradient field:
//   bar^{n+1}_{i,kl}  = D bar^n_{i,kl} - (d_h u_i) bar^n_{h,kl} + (d_k u_i) D^n psi_l - (d_l u_i) D^n psi_k
//   hat^{n+1}_{ij,kl} = D hat^n_{ij,kl} - (d_h u_j) hat^n_{ih,kl} - u_i bar^n_{j,kl}
//                       + delta_jk u_i D^n psi_l - delta_jl u_i D^n psi_k
// with bar^0 = hat^0 = 0, so that (curl D^n psi)_kl = d_i bar^n_{i,kl} = d_i d_j hat^n_{ij,kl}
struct CurlForms {
  int n = 0;
  std::vector<NTen3> bar;
  std::vector<NTen4> hat;
};
CurlForms lowfreq_curl_forms(int n);

// s = number of factors, alpha = their D orders; |c| <= base^s n!/alpha!
std::vector<CoefficientEntry> lowfreq_table(const std::string& family, int n, const std::string& index,
                                            const NormalForm& f, int base);
std::vector<CoefficientEntry> div_tables(const DivForms& f);
std::vector<CoefficientEntry> curl_tables(const CurlForms& f);

// which instance fields stand in for psi and phihat
enum class DivInstanceKind { DivergenceFree, WithPhiHat, VelocityStress };

struct DivInstance {
  PVec u, psi;
  PMat phi_hat;
};
DivInstance make_div_instance(const PolynomialFieldInstance& in, DivInstanceKind kind);

// exact checks on an instance; throw RecursionMismatch on the first disagreement
void verify_div_forms(const DivForms& f, const DivInstance& in);
void verify_curl_forms(const CurlForms& f, const PolynomialFieldInstance& in);

}  // namespace kirchhoff2d::calculus
