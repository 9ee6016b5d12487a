#include "kirchhoff2d/calculus/normal_form.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace kirchhoff2d::calculus {

Atom Atom::diff(int k) const {
  Atom b = *this;
  if (k == 0) ++b.d1;
  else ++b.d2;
  return b;
}

std::string Atom::str() const {
  std::ostringstream o;
  for (int n = 0; n < d1; ++n) o << "d1 ";
  for (int n = 0; n < d2; ++n) o << "d2 ";
  if (a == 1) o << "D ";
  else if (a > 1) o << "D^" << int(a) << " ";
  switch (sym) {
    case Sym::U: o << "u" << i + 1; break;
    case Sym::Psi: o << "psi" << i + 1; break;
    case Sym::PhiHat: o << "phihat" << i + 1 << j + 1; break;
    case Sym::Scalar: o << "f"; break;
  }
  return o.str();
}

NormalForm::NormalForm(const Atom& a) { t_[{a}] = 1; }

NormalForm NormalForm::constant(const Integer& c) {
  NormalForm f;
  f.add({}, c);
  return f;
}

void NormalForm::add(const Monomial& m, const Integer& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

std::string NormalForm::str() const {
  if (t_.empty()) return "0";
  std::ostringstream o;
  bool first = true;
  for (const auto& [m, c] : t_) {
    if (!first) o << (c < 0 ? " - " : " + ");
    else if (c < 0) o << "-";
    first = false;
    Integer a = abs(c);
    bool unit = a == 1 && !m.empty();
    if (!unit) o << a.get_str();
    for (size_t n = 0; n < m.size(); ++n) o << (n || !unit ? " * " : "") << "(" << m[n].str() << ")";
  }
  return o.str();
}

NormalForm& NormalForm::operator+=(const NormalForm& o) {
  for (const auto& [m, c] : o.t_) add(m, c);
  return *this;
}

NormalForm& NormalForm::operator-=(const NormalForm& o) {
  for (const auto& [m, c] : o.t_) add(m, -c);
  return *this;
}

NormalForm& NormalForm::operator*=(const Integer& s) {
  if (s == 0) t_.clear();
  for (auto& kv : t_) kv.second *= s;
  return *this;
}

namespace {
Monomial merge(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m;
}
}  // namespace

NormalForm operator*(const NormalForm& a, const NormalForm& b) {
  NormalForm p;
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) p.add(merge(ma, mb), ca * cb);
  return p;
}

NormalForm material(const Atom& a) {
  static std::mutex mu;
  static std::map<Atom, NormalForm> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(a);
    if (it != memo.end()) return it->second;
  }
  NormalForm out;
  if (a.derivatives() == 0) {
    Atom b = a;
    ++b.a;
    out = NormalForm(b);
  } else {
    // D d_k Y = d_k D Y - (d_k u_m)(d_m Y)
    int k = a.d1 > 0 ? 0 : 1;
    Atom y = a;
    if (k == 0) --y.d1;
    else --y.d2;
    out = partial(material(y), k);
    for (int m = 0; m < 2; ++m) out -= NormalForm(Atom::u(m).diff(k)) * NormalForm(y.diff(m));
  }
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(a, out);
  return out;
}

NormalForm material(const NormalForm& f) {
  NormalForm out;
  for (const auto& [m, c] : f.terms())
    for (size_t p = 0; p < m.size(); ++p) {
      Monomial rest = m;
      rest.erase(rest.begin() + p);
      const NormalForm dp = material(m[p]);
      for (const auto& [dm, dc] : dp.terms()) out.add(merge(rest, dm), c * dc);
    }
  return out;
}

NormalForm partial(const NormalForm& f, int k) {
  NormalForm out;
  for (const auto& [m, c] : f.terms())
    for (size_t p = 0; p < m.size(); ++p) {
      Monomial n = m;
      n[p] = n[p].diff(k);
      std::sort(n.begin(), n.end());
      out.add(n, c);
    }
  return out;
}

NormalForm reduce_divergence_free(const NormalForm& f) {
  NormalForm out;
  for (const auto& [m, c] : f.terms()) {
    Monomial n = m;
    Integer s = c;
    for (auto& at : n)
      if (at.sym == Sym::U && at.a == 0 && at.i == 1 && at.d2 > 0) {
        at.i = 0;
        ++at.d1;
        --at.d2;
        s = -s;
      }
    std::sort(n.begin(), n.end());
    out.add(n, s);
  }
  return out;
}

struct Expr::Node {
  Op op;
  Atom atom;
  Integer c;
  std::vector<Expr> kids;
  int k = 0;
};

namespace {
std::shared_ptr<Expr::Node> make_node(Expr::Op op) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  return n;
}
}  // namespace

Expr Expr::atom(const Atom& a) {
  auto n = make_node(Op::Atom);
  n->atom = a;
  Expr e;
  e.n_ = n;
  return e;
}

Expr Expr::constant(const Integer& c) {
  auto n = make_node(Op::Const);
  n->c = c;
  Expr e;
  e.n_ = n;
  return e;
}

Expr operator+(const Expr& a, const Expr& b) {
  auto n = make_node(Expr::Op::Add);
  n->kids = {a, b};
  Expr e;
  e.n_ = n;
  return e;
}

Expr operator*(const Expr& a, const Expr& b) {
  auto n = make_node(Expr::Op::Mul);
  n->kids = {a, b};
  Expr e;
  e.n_ = n;
  return e;
}

Expr operator-(const Expr& a, const Expr& b) { return a + Expr::constant(-1) * b; }

Expr D(const Expr& x) {
  auto n = make_node(Expr::Op::D);
  n->kids = {x};
  Expr e;
  e.n_ = n;
  return e;
}

Expr d(const Expr& x, int k) {
  auto n = make_node(Expr::Op::Partial);
  n->kids = {x};
  n->k = k;
  Expr e;
  e.n_ = n;
  return e;
}

Expr Expr::from(const NormalForm& f) {
  Expr sum = constant(0);
  for (const auto& [m, c] : f.terms()) {
    Expr t = constant(c);
    for (const auto& a : m) t = t * atom(a);
    sum = sum + t;
  }
  return sum;
}

Expr::Op Expr::op() const {
  if (!n_) throw std::logic_error("empty expression");
  return n_->op;
}

NormalForm Expr::normalize() const {
  if (!n_) throw std::logic_error("empty expression");
  switch (n_->op) {
    case Op::Atom: return NormalForm(n_->atom);
    case Op::Const: return NormalForm::constant(n_->c);
    case Op::Add: return n_->kids[0].normalize() + n_->kids[1].normalize();
    case Op::Mul: return n_->kids[0].normalize() * n_->kids[1].normalize();
    case Op::D: return material(n_->kids[0].normalize());
    case Op::Partial: return partial(n_->kids[0].normalize(), n_->k);
  }
  return {};
}

size_t Expr::nodes() const {
  if (!n_) return 0;
  size_t n = 1;
  for (const auto& k : n_->kids) n += k.nodes();
  return n;
}

Expr div(const EVec& v) { return d(v[0], 0) + d(v[1], 1); }
Expr curl(const EVec& v) { return d(v[1], 0) - d(v[0], 1); }
EVec D(const EVec& v) { return {D(v[0]), D(v[1])}; }

EVec field(Sym s) {
  if (s == Sym::U) return {Expr::atom(Atom::u(0)), Expr::atom(Atom::u(1))};
  if (s == Sym::Psi) return {Expr::atom(Atom::psi(0)), Expr::atom(Atom::psi(1))};
  throw std::invalid_argument("not a vector symbol");
}

EVec gradient_of_scalar() {
  Expr f = Expr::atom(Atom::scalar());
  return {d(f, 0), d(f, 1)};
}

Expr commute_div_D(const EVec& psi) {
  Expr e = D(div(psi));
  for (int k = 0; k < 2; ++k)
    for (int m = 0; m < 2; ++m) e = e + d(Expr::atom(Atom::u(m)), k) * d(psi[k], m);
  return e;
}

Expr commute_curl_D(const EVec& psi) {
  Expr e = D(curl(psi));
  for (int m = 0; m < 2; ++m) {
    Expr um1 = d(Expr::atom(Atom::u(m)), 0), um2 = d(Expr::atom(Atom::u(m)), 1);
    e = e + um1 * d(psi[1], m) - um2 * d(psi[0], m);
  }
  return e;
}

Evaluator::Evaluator(PVec u, PVec psi, PMat phi_hat, Poly scalar)
    : u_(std::move(u)), psi_(std::move(psi)), phi_hat_(std::move(phi_hat)), scalar_(std::move(scalar)) {}

const Poly& Evaluator::base(Sym s, int i, int j, int a) {
  std::array<int, 4> key{int(s), i, j, a};
  auto it = dpow_.find(key);
  if (it != dpow_.end()) return it->second;
  Poly p;
  if (a == 0) {
    switch (s) {
      case Sym::U: p = u_[i]; break;
      case Sym::Psi: p = psi_[i]; break;
      case Sym::PhiHat: p = phi_hat_[i][j]; break;
      case Sym::Scalar: p = scalar_; break;
    }
  } else {
    p = material(base(s, i, j, a - 1), u_);
  }
  return dpow_.emplace(key, std::move(p)).first->second;
}

const Poly& Evaluator::atom(const Atom& a) {
  auto it = memo_.find(a);
  if (it != memo_.end()) return it->second;
  Poly p;
  if (a.derivatives() == 0) {
    p = base(a.sym, a.i, a.j, a.a);
  } else {
    Atom b = a;
    int k;
    if (b.d2 > 0) {
      --b.d2;
      k = 2;
    } else {
      --b.d1;
      k = 1;
    }
    p = atom(b).diff(k);
  }
  return memo_.emplace(a, std::move(p)).first->second;
}

Poly Evaluator::operator()(const NormalForm& f) {
  Poly sum;
  for (const auto& [m, c] : f.terms()) {
    Poly t = Poly::monomial(Rational(c), 0, 0, 0);
    for (const auto& a : m) t = t * atom(a);
    sum += t;
  }
  return sum;
}

}  // namespace kirchhoff2d::calculus
