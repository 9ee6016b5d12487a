#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "kirchhoff2d/calculus/combinatorics.hpp"
#include "kirchhoff2d/calculus/instances.hpp"

namespace kirchhoff2d::calculus {

// matrix-valued letters, multiplied left to right:
//   A_a = grad D^a u, B_a = grad D^a psi (vector psi),
//   C_a = D^a grad f, G_a = grad D^a f (scalar f, column vectors)
struct Letter {
  char kind = 'A';
  int a = 0;
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;
using WordSum = std::map<Word, Integer>;

std::string word_str(const Word& w);
void add_to(WordSum& s, const Word& w, const Integer& c);

// D through the rules D A_a = A_{a+1} - A_0 A_a, D B_a = B_{a+1} - A_0 B_a,
// D G_a = G_{a+1} - A_0 G_a, D C_a = C_{a+1}
WordSum material(const WordSum& s);

// F^k and G^k; both come out of div/curl D^k psi = D^k(div/curl psi) + tr/as{...}
WordSum expand_div_Dk(int k);
WordSum expand_curl_Dk(int k);

// K^k from the closed binomial sum, and by iterating d_k D - D d_k = (d_k u_j) d_j
WordSum expand_grad_commutator(int k);
WordSum iterate_grad_commutator(int k);

// (s, alpha) of a word: s letters, alpha their D orders
MultiIndex word_index(const Word& w);

// |c| <= k!/alpha!
std::vector<CoefficientEntry> word_table(const std::string& family, int k, const WordSum& s);

// value of a word sum on a polynomial instance; vectors ride in column 0
class WordEvaluator {
 public:
  WordEvaluator(const PolynomialFieldInstance& in, int max_order);
  PMat operator()(const WordSum& s);
  const PMat& letter(const Letter& l);

  const std::vector<PVec>& Du() const { return du_; }
  const std::vector<PVec>& Dpsi() const { return dpsi_; }
  const std::vector<Poly>& Dscalar() const { return dscalar_; }

 private:
  const PMat& suffix(const Word& w, size_t from);
  std::vector<PVec> du_, dpsi_;
  std::vector<Poly> dscalar_;
  std::vector<PVec> dgrad_;  // D^a grad f
  std::map<Letter, PMat> letters_;
  std::map<Word, PMat> suffixes_;
};

}  // namespace kirchhoff2d::calculus
