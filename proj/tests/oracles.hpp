// Independent reference implementations used only by tests.
#pragma once

#include <algorithm>
#include <functional>
#include <tuple>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lambek/grammar.hpp"
#include "lambek/proof.hpp"
#include "lambek/types.hpp"

namespace oracle {

using lambek::Grammar;
using lambek::Symbol;
using lambek::Type;
using lambek::Word;

inline Grammar bool_grammar() { return lambek::load_grammar_file(GRAMMAR_DIR "/bool.g"); }
inline Grammar eng_grammar() { return lambek::load_grammar_file(GRAMMAR_DIR "/eng.g"); }

inline std::vector<lambek::Sequent> pronoun_axioms(const Grammar& g) {
  return {lambek::parse_sequent("he |- Sent/(Noun\\Sent)", g),
          lambek::parse_sequent("him |- (Sent/Noun)\\Sent", g)};
}

inline Word w(const std::string& s) { return lambek::tokenize(s); }

// Every word over the alphabet up to max_len, in no particular order.
inline std::vector<Word> all_words(const std::set<std::string>& alphabet, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (const auto& t : alphabet) {
        Word x = out[i];
        x.push_back(t);
        out.push_back(std::move(x));
      }
    begin = end;
  }
  return out;
}

// Span table fixpoint: derives[A][i][j] for every nonterminal and span of w.
// Splits of a right-hand side are tried exhaustively.
class NaiveDerives {
 public:
  NaiveDerives(const Grammar& g, const Word& w) : g_(g), w_(w), n_(w.size()) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& p : g.productions())
        for (std::size_t i = 0; i <= n_; ++i)
          for (std::size_t j = i; j <= n_; ++j)
            if (!has(p.lhs, i, j) && rhs_matches(p.rhs, 0, i, j)) {
              table_.insert({p.lhs, i, j});
              changed = true;
            }
    }
  }

  bool has(const std::string& a, std::size_t i, std::size_t j) const {
    return table_.count({a, i, j}) != 0;
  }
  bool derives(const std::string& a) const { return has(a, 0, n_); }

 private:
  bool sym_matches(const Symbol& s, std::size_t i, std::size_t j) const {
    if (s.is_terminal()) return j == i + 1 && w_[i] == s.name;
    return has(s.name, i, j);
  }
  bool rhs_matches(const std::vector<Symbol>& rhs, std::size_t k, std::size_t i,
                   std::size_t j) const {
    if (k == rhs.size()) return i == j;
    for (std::size_t m = i; m <= j; ++m)
      if (sym_matches(rhs[k], i, m) && rhs_matches(rhs, k + 1, m, j)) return true;
    return false;
  }

  const Grammar& g_;
  const Word& w_;
  std::size_t n_;
  std::set<std::tuple<std::string, std::size_t, std::size_t>> table_;
};

inline bool derives(const Grammar& g, const std::string& a, const Word& w) {
  return NaiveDerives(g, w).derives(a);
}

// Membership straight from the definition, with every alphabet word of
// length <= L as a test word.
class BruteSemantics {
 public:
  BruteSemantics(const Grammar& g, std::size_t L) : g_(g), tests_(all_words(g.terminals(), L)) {}

  bool member(const Word& w, const Type& t) {
    auto key = lambek::render(t) + "\x1f" + lambek::join(w) + "\x1f" + std::to_string(w.size());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = false;
    switch (t.kind()) {
      case Type::Kind::Atom:
        r = t.symbol().is_terminal() ? (w.size() == 1 && w[0] == t.symbol().name)
                                     : derives(g_, t.symbol().name, w);
        break;
      case Type::Kind::Unit:
        r = w.empty();
        break;
      case Type::Kind::Prod:
        for (std::size_t k = 0; k <= w.size() && !r; ++k)
          r = member(Word(w.begin(), w.begin() + k), t.left()) &&
              member(Word(w.begin() + k, w.end()), t.right());
        break;
      case Type::Kind::Under:
      case Type::Kind::Over:
        r = true;
        for (const auto& v : tests_) {
          if (!member(v, t.arg())) continue;
          Word x = t.is(Type::Kind::Under) ? lambek::concat(v, w) : lambek::concat(w, v);
          if (!member(x, t.result())) {
            r = false;
            break;
          }
        }
        break;
    }
    memo_.emplace(key, r);
    return r;
  }

  lambek::WordSet denotation(const Type& t, std::size_t out_len) {
    lambek::WordSet out;
    for (const auto& x : all_words(g_.terminals(), out_len))
      if (member(x, t)) out.insert(x);
    return out;
  }

 private:
  const Grammar& g_;
  std::vector<Word> tests_;
  std::map<std::string, bool> memo_;
};

// Small random grammars over nonterminals S, A, B and terminals x, y.
inline Grammar random_grammar(std::mt19937& rng, bool allow_epsilon = true) {
  const std::vector<std::string> nts{"S", "A", "B"};
  const std::vector<std::string> ts{"x", "y"};
  std::uniform_int_distribution<int> nprod(1, 3), len(allow_epsilon ? 0 : 1, 3), pick(0, 4);
  std::vector<lambek::Production> prods;
  for (const auto& a : nts) {
    int k = nprod(rng);
    for (int i = 0; i < k; ++i) {
      lambek::Production p{a, {}};
      int l = len(rng);
      for (int j = 0; j < l; ++j) {
        int c = pick(rng);
        if (c < 3)
          p.rhs.push_back(Symbol::nonterminal(nts[c]));
        else
          p.rhs.push_back(Symbol::terminal(ts[c - 3]));
      }
      if (std::find(prods.begin(), prods.end(), p) == prods.end()) prods.push_back(p);
    }
  }
  return Grammar("S", prods);
}

// Structural check of a parse tree against the grammar.
template <class Tree>
bool tree_well_formed(const Grammar& g, const Tree& t) {
  if (t.epsilon || t.symbol.is_terminal()) return t.children.empty();
  if (t.production < 0 || t.production >= static_cast<int>(g.productions().size())) return false;
  const auto& p = g.productions()[t.production];
  if (p.lhs != t.symbol.name) return false;
  if (p.rhs.empty()) return t.children.size() == 1 && t.children[0].epsilon;
  if (p.rhs.size() != t.children.size()) return false;
  Word y;
  for (std::size_t i = 0; i < p.rhs.size(); ++i) {
    if (t.children[i].symbol != p.rhs[i] || t.children[i].epsilon) return false;
    if (!tree_well_formed(g, t.children[i])) return false;
    y.insert(y.end(), t.children[i].yield.begin(), t.children[i].yield.end());
  }
  return y == t.yield;
}

}  // namespace oracle
