#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lambek/earley.hpp"
#include "lambek/grammar.hpp"

namespace lambek {

/// Concrete derivation tree. Internal nodes carry the index of the applied
/// production; an epsilon production gets exactly one epsilon leaf child.
struct ParseTree {
  Symbol symbol;
  bool epsilon = false;
  int production = -1;
  std::vector<ParseTree> children;
  Word yield;

  static ParseTree leaf(const std::string& token);
  static ParseTree epsilon_leaf();
  bool is_leaf() const { return children.empty(); }
};

/// Labelled-shape equality; cached yields and production indices are ignored.
bool isomorphic(const ParseTree& a, const ParseTree& b);

/// Indented rendering, one node per line, two spaces per level.
std::string render_tree(const ParseTree& t);
nlohmann::json tree_to_json(const ParseTree& t);

struct ParseResult {
  enum class Kind { Unique, Ambiguous, Reject };
  Kind kind = Kind::Reject;
  std::vector<ParseTree> trees;  // one for Unique, two distinct witnesses for Ambiguous

  bool accepted() const { return kind != Kind::Reject; }
};

/// Builds a tree for w from nonterminal a, detecting ambiguity.
///
/// Uses a span chart that counts derivations per (nonterminal, span), capped
/// at two. Unit and epsilon cycles simply push the count to two, which is
/// correct: such a cycle yields infinitely many trees.
ParseResult parse_tree(const Grammar& g, const std::string& a, const Word& w);

struct AmbiguityWitness {
  Word word;
  ParseTree first;
  ParseTree second;
};

/// nullopt means every word of length <= max_len has at most one tree.
std::optional<AmbiguityWitness> check_unambiguous(const Grammar& g, const std::string& a,
                                                  std::size_t max_len);

struct HoleMark {
  std::string hole_type;
  std::string fresh_token;
};

/// Adds `hole_type ::= __HOLE` (or __HOLE1, __HOLE2, ... on collision).
std::pair<Grammar, HoleMark> extend_with_hole(const Grammar& g, const std::string& hole_type);

}  // namespace lambek
