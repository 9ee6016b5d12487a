#include "kirchhoff2d/calculus/words.hpp"

#include <stdexcept>

namespace kirchhoff2d::calculus {

std::string word_str(const Word& w) {
  std::string o;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) o += " ";
    o += w[i].kind;
    o += std::to_string(w[i].a);
  }
  return o;
}

void add_to(WordSum& s, const Word& w, const Integer& c) {
  if (c == 0) return;
  auto [it, fresh] = s.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) s.erase(it);
  }
}

WordSum material(const WordSum& s) {
  WordSum out;
  for (const auto& [w, c] : s)
    for (size_t p = 0; p < w.size(); ++p) {
      Word up = w;
      ++up[p].a;
      add_to(out, up, c);
      if (w[p].kind == 'C') continue;
      Word ins = w;
      ins.insert(ins.begin() + p, Letter{'A', 0});
      add_to(out, ins, -c);
    }
  return out;
}

namespace {
WordSum commutator_recursion(int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  WordSum f;
  for (int j = 1; j <= k; ++j) {
    f = material(f);
    add_to(f, {{'A', 0}, {'B', j - 1}}, 1);
  }
  return f;
}
}  // namespace

WordSum expand_div_Dk(int k) { return commutator_recursion(k); }

// the curl version collects as{} of the same matrix words: (t3.3) has the same
// commutator (grad u)(grad psi) as (t3.2), only the collector differs
WordSum expand_curl_Dk(int k) { return commutator_recursion(k); }

WordSum expand_grad_commutator(int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  WordSum s;
  for (int r = 1; r <= k; ++r) add_to(s, {{'A', r - 1}, {'C', k - r}}, -binomial(k, r));
  return s;
}

WordSum iterate_grad_commutator(int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  // K^j = D K^{j-1} - A_0 grad D^{j-1} f and grad D^{j-1} f = C_{j-1} - K^{j-1}
  WordSum K;
  for (int j = 1; j <= k; ++j) {
    WordSum next = material(K);
    add_to(next, {{'A', 0}, {'C', j - 1}}, -1);
    for (const auto& [w, c] : K) {
      Word x = w;
      x.insert(x.begin(), Letter{'A', 0});
      add_to(next, x, c);
    }
    K = std::move(next);
  }
  return K;
}

MultiIndex word_index(const Word& w) {
  MultiIndex m;
  m.s = int(w.size());
  for (const auto& l : w) m.alpha.push_back(l.a);
  return m;
}

std::vector<CoefficientEntry> word_table(const std::string& family, int k, const WordSum& s) {
  std::vector<CoefficientEntry> rows;
  for (const auto& [w, c] : s) {
    CoefficientEntry e;
    e.family = family;
    e.k = k;
    e.theta = word_index(w);
    e.coeff = c;
    e.bound = factorial(k) / alpha_factorial(e.theta.alpha);
    e.term = word_str(w);
    rows.push_back(std::move(e));
  }
  return rows;
}

WordEvaluator::WordEvaluator(const PolynomialFieldInstance& in, int max_order) {
  du_ = material_powers(in.u, in.u, max_order);
  dpsi_ = material_powers(in.psi, in.u, max_order);
  dscalar_ = material_powers(in.scalar, in.u, max_order);
  dgrad_ = material_powers(grad(in.scalar), in.u, max_order);
}

const PMat& WordEvaluator::letter(const Letter& l) {
  auto it = letters_.find(l);
  if (it != letters_.end()) return it->second;
  if (l.a >= int(du_.size())) throw std::out_of_range("letter order beyond the evaluator's range");
  PMat m;
  switch (l.kind) {
    case 'A': m = grad(du_[l.a]); break;
    case 'B': m = grad(dpsi_[l.a]); break;
    case 'C':
      m[0][0] = dgrad_[l.a][0];
      m[1][0] = dgrad_[l.a][1];
      break;
    case 'G': {
      PVec g = grad(dscalar_[l.a]);
      m[0][0] = g[0];
      m[1][0] = g[1];
      break;
    }
    default: throw std::invalid_argument("unknown letter");
  }
  return letters_.emplace(l, std::move(m)).first->second;
}

const PMat& WordEvaluator::suffix(const Word& w, size_t from) {
  Word key(w.begin() + from, w.end());
  auto it = suffixes_.find(key);
  if (it != suffixes_.end()) return it->second;
  PMat v = from + 1 == w.size() ? letter(w[from]) : mul(letter(w[from]), suffix(w, from + 1));
  return suffixes_.emplace(std::move(key), std::move(v)).first->second;
}

PMat WordEvaluator::operator()(const WordSum& s) {
  PMat sum;
  for (const auto& [w, c] : s) {
    if (w.empty()) continue;
    const PMat& v = suffix(w, 0);
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l) sum[k][l] += v[k][l] * Rational(c);
  }
  return sum;
}

}  // namespace kirchhoff2d::calculus
