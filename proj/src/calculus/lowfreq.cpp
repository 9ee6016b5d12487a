#include "kirchhoff2d/calculus/lowfreq.hpp"

#include <stdexcept>

#include "kirchhoff2d/errors.hpp"

namespace kirchhoff2d::calculus {

namespace {
NormalForm du(int i, int k) { return NormalForm(Atom::u(i).diff(k)); }
NormalForm uu(int i) { return NormalForm(Atom::u(i)); }
NormalForm Dpsi(int k, int a) { return NormalForm(Atom::psi(k, a)); }
}  // namespace

DivForms lowfreq_div_forms(int n, bool with_phi_hat) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  DivForms f;
  f.n = n;
  f.with_phi_hat = with_phi_hat;
  NMat hat0;
  NVec bar0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (with_phi_hat) hat0[i][j] = NormalForm(Atom::phi_hat(i, j));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) bar0[i] += partial(hat0[i][j], j);
  f.bar.push_back(bar0);
  f.hat.push_back(hat0);
  for (int m = 0; m < n; ++m) {
    const NVec& b = f.bar[m];
    const NMat& h = f.hat[m];
    NVec nb;
    NMat nh;
    for (int i = 0; i < 2; ++i) {
      nb[i] = material(b[i]);
      for (int k = 0; k < 2; ++k) nb[i] -= du(i, k) * (b[k] - Dpsi(k, m));
    }
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        nh[i][j] = material(h[i][j]);
        for (int k = 0; k < 2; ++k) nh[i][j] -= h[i][k] * du(j, k);
        nh[i][j] -= uu(i) * (b[j] - Dpsi(j, m));
      }
    f.bar.push_back(std::move(nb));
    f.hat.push_back(std::move(nh));
  }
  return f;
}

CurlForms lowfreq_curl_forms(int n) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  CurlForms f;
  f.n = n;
  f.bar.push_back({});
  f.hat.push_back({});
  for (int m = 0; m < n; ++m) {
    const NTen3& b = f.bar[m];
    const NTen4& h = f.hat[m];
    NTen3 nb;
    NTen4 nh;
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          NormalForm& x = nb[i][k][l];
          x = material(b[i][k][l]);
          for (int hh = 0; hh < 2; ++hh) x -= du(i, hh) * b[hh][k][l];
          x += du(i, k) * Dpsi(l, m);
          x -= du(i, l) * Dpsi(k, m);
        }
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) {
            NormalForm& x = nh[i][j][k][l];
            x = material(h[i][j][k][l]);
            for (int hh = 0; hh < 2; ++hh) x -= du(j, hh) * h[i][hh][k][l];
            x -= uu(i) * b[j][k][l];
            if (j == k) x += uu(i) * Dpsi(l, m);
            if (j == l) x -= uu(i) * Dpsi(k, m);
          }
    f.bar.push_back(std::move(nb));
    f.hat.push_back(std::move(nh));
  }
  return f;
}

std::vector<CoefficientEntry> lowfreq_table(const std::string& family, int n, const std::string& index,
                                            const NormalForm& f, int base) {
  std::vector<CoefficientEntry> rows;
  for (const auto& [m, c] : f.terms()) {
    CoefficientEntry e;
    e.family = family;
    e.k = n;
    e.index = index;
    e.theta.s = int(m.size());
    for (const auto& a : m) e.theta.alpha.push_back(a.a);
    e.coeff = c;
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), base, e.theta.s);
    e.bound = p * factorial(n) / alpha_factorial(e.theta.alpha);
    NormalForm single;
    single.add(m, 1);
    e.term = single.str();
    rows.push_back(std::move(e));
  }
  return rows;
}

std::vector<CoefficientEntry> div_tables(const DivForms& f) {
  std::vector<CoefficientEntry> rows;
  for (int m = 0; m <= f.n; ++m)
    for (int i = 0; i < 2; ++i) {
      auto b = lowfreq_table("phibar", m, std::to_string(i + 1), f.bar[m][i], 2);
      rows.insert(rows.end(), b.begin(), b.end());
      for (int j = 0; j < 2; ++j) {
        auto h = lowfreq_table("phihat", m, std::to_string(i + 1) + std::to_string(j + 1), f.hat[m][i][j], 4);
        rows.insert(rows.end(), h.begin(), h.end());
      }
    }
  return rows;
}

std::vector<CoefficientEntry> curl_tables(const CurlForms& f) {
  std::vector<CoefficientEntry> rows;
  auto kl = [](int k, int l) { return std::to_string(k + 1) + std::to_string(l + 1); };
  for (int m = 0; m <= f.n; ++m)
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          auto b = lowfreq_table("gammabar", m, std::to_string(i + 1) + ";" + kl(k, l), f.bar[m][i][k][l], 2);
          rows.insert(rows.end(), b.begin(), b.end());
          for (int j = 0; j < 2; ++j) {
            auto h = lowfreq_table("gammahat", m, kl(i, j) + ";" + kl(k, l), f.hat[m][i][j][k][l], 4);
            rows.insert(rows.end(), h.begin(), h.end());
          }
        }
  return rows;
}

DivInstance make_div_instance(const PolynomialFieldInstance& in, DivInstanceKind kind) {
  DivInstance d;
  d.u = in.u;
  switch (kind) {
    case DivInstanceKind::DivergenceFree: d.psi = in.w; break;
    case DivInstanceKind::WithPhiHat: d.phi_hat = in.phi_hat; break;
    case DivInstanceKind::VelocityStress:
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) d.phi_hat[i][j] = -(in.u[i] * in.u[j]);
      break;
  }
  if (kind != DivInstanceKind::DivergenceFree)
    for (int i = 0; i < 2; ++i) d.psi[i] = d.phi_hat[i][0].diff(1) + d.phi_hat[i][1].diff(2) + in.w[i];
  return d;
}

namespace {
void require(bool ok, const std::string& what, int m) {
  if (!ok) throw RecursionMismatch(what + " at order " + std::to_string(m));
}
}  // namespace

void verify_div_forms(const DivForms& f, const DivInstance& in) {
  if (!f.with_phi_hat) {
    for (const auto& row : in.phi_hat)
      for (const auto& c : row)
        if (!c.is_zero()) throw std::invalid_argument("forms without phi hat need phi hat = 0");
  }
  Evaluator ev(in.u, in.psi, in.phi_hat);
  auto Dpsi = material_powers(in.psi, in.u, f.n);
  // the same recursions run directly on the polynomials
  PVec bar;
  PMat hat = in.phi_hat;
  for (int i = 0; i < 2; ++i) bar[i] = hat[i][0].diff(1) + hat[i][1].diff(2);
  for (int m = 0; m <= f.n; ++m) {
    if (m > 0) {
      PMat gu = grad(in.u);  // gu[k][i] = d_k u_i
      PVec nb;
      PMat nh;
      for (int i = 0; i < 2; ++i) {
        nb[i] = material(bar[i], in.u);
        for (int k = 0; k < 2; ++k) nb[i] -= gu[k][i] * (bar[k] - Dpsi[m - 1][k]);
      }
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          nh[i][j] = material(hat[i][j], in.u);
          for (int k = 0; k < 2; ++k) nh[i][j] -= hat[i][k] * gu[k][j];
          nh[i][j] -= in.u[i] * (bar[j] - Dpsi[m - 1][j]);
        }
      bar = nb;
      hat = nh;
    }
    PVec barE{ev(f.bar[m][0]), ev(f.bar[m][1])};
    PMat hatE;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) hatE[i][j] = ev(f.hat[m][i][j]);
    require(barE == bar && hatE == hat, "formal and direct recursions disagree", m);
    Poly target = div(Dpsi[m]);
    require(div(barE) == target, "d_i phibar_i != div D^n psi", m);
    Poly ddh;
    for (int i = 0; i < 2; ++i) {
      Poly dj = hatE[i][0].diff(1) + hatE[i][1].diff(2);
      require(dj == barE[i], "d_j phihat_ij != phibar_i", m);
      ddh += dj.diff(i + 1);
    }
    require(ddh == target, "d_i d_j phihat_ij != div D^n psi", m);
  }
}

void verify_curl_forms(const CurlForms& f, const PolynomialFieldInstance& in) {
  PVec psi = grad(in.scalar);
  Evaluator ev(in.u, psi);
  auto Dpsi = material_powers(psi, in.u, f.n);
  PMat gu = grad(in.u);
  std::array<PMat, 2> bar{};                   // bar[i][k][l]
  std::array<std::array<PMat, 2>, 2> hat{};    // hat[i][j][k][l]
  for (int m = 0; m <= f.n; ++m) {
    if (m > 0) {
      std::array<PMat, 2> nb;
      std::array<std::array<PMat, 2>, 2> nh;
      const PVec& P = Dpsi[m - 1];
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) {
            Poly x = material(bar[i][k][l], in.u);
            for (int h = 0; h < 2; ++h) x -= gu[h][i] * bar[h][k][l];
            x += gu[k][i] * P[l] - gu[l][i] * P[k];
            nb[i][k][l] = x;
          }
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) {
              Poly x = material(hat[i][j][k][l], in.u);
              for (int h = 0; h < 2; ++h) x -= gu[h][j] * hat[i][h][k][l];
              x -= in.u[i] * bar[j][k][l];
              if (j == k) x += in.u[i] * P[l];
              if (j == l) x -= in.u[i] * P[k];
              nh[i][j][k][l] = x;
            }
      bar = nb;
      hat = nh;
    }
    PMat g = grad(Dpsi[m]);
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l) {
        Poly target = g[k][l] - g[l][k];
        Poly db, ddh;
        for (int i = 0; i < 2; ++i) {
          Poly bE = ev(f.bar[m][i][k][l]);
          require(bE == bar[i][k][l], "formal and direct recursions disagree", m);
          db += bE.diff(i + 1);
          Poly dj;
          for (int j = 0; j < 2; ++j) {
            Poly hE = ev(f.hat[m][i][j][k][l]);
            require(hE == hat[i][j][k][l], "formal and direct recursions disagree", m);
            dj += hE.diff(j + 1);
          }
          require(dj == bE, "d_j gammahat_ij != gammabar_i", m);
          ddh += dj.diff(i + 1);
        }
        require(db == target, "d_i gammabar_i != curl D^n psi", m);
        require(ddh == target, "d_i d_j gammahat_ij != curl D^n psi", m);
      }
  }
}

}  // namespace kirchhoff2d::calculus
