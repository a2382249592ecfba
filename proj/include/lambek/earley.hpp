#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lambek/grammar.hpp"

namespace lambek {

/// Incremental Earley recognizer for one goal nonterminal.
///
/// Tokens are pushed with feed() and can be retracted with unfeed(), which
/// makes depth-first enumeration of words cheap. Epsilon productions are
/// handled with the nullable-predictor fix (Aycock and Horspool), so no
/// grammar normalization is needed. The grammar must outlive the recognizer.
class EarleyRecognizer {
 public:
  EarleyRecognizer(const Grammar& g, const std::string& goal);

  /// Scans one token; returns alive().
  bool feed(const std::string& token);
  bool feed(const Word& w);
  void unfeed();

  /// True when the tokens fed so far form a word of the goal.
  bool accepted() const;
  /// True when the tokens fed so far are a prefix of some word of the goal
  /// (exact for grammars without useless nonterminals).
  bool alive() const { return !sets_.back().items.empty(); }
  std::size_t position() const { return sets_.size() - 1; }

 private:
  struct Item {
    int prod;  // -1 is the augmented item  S' ::= goal
    int dot;
    int origin;
  };
  struct Set {
    std::vector<Item> items;
    std::unordered_set<std::uint64_t> seen;
  };

  int symbol_at(int prod, int dot) const;  // 0 = end, >0 nonterminal id+1, <0 terminal
  int rhs_size(int prod) const;
  void add(Set& s, Item it);
  void close(std::size_t k);

  std::vector<std::vector<int>> rhs_;
  std::vector<int> lhs_;
  std::vector<std::vector<int>> by_lhs_;
  std::vector<char> nullable_;
  std::unordered_map<std::string, int> nt_id_;
  std::unordered_map<std::string, int> t_id_;
  int goal_ = 0;
  std::vector<Set> sets_;
};

bool recognize(const Grammar& g, const std::string& nonterminal, const Word& w);

}  // namespace lambek
