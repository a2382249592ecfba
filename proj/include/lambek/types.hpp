#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lambek/grammar.hpp"

namespace lambek {

/// A type of the calculus over a grammar's symbols.
///
///   Atom X        words derivable from X
///   Under(a, r)   a\r  -- needs an `a` on its left, yields `r`
///   Over(r, a)    r/a  -- needs an `a` on its right, yields `r`
///   Prod(l, r)    l*r  -- concatenation
///   Unit          1    -- the empty word
///
/// Immutable and cheap to copy (shared structure).
class Type {
 public:
  enum class Kind { Atom, Under, Over, Prod, Unit };

  static Type atom(Symbol s);
  static Type under(Type arg, Type result);
  static Type over(Type result, Type arg);
  static Type prod(Type left, Type right);
  static Type unit();

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  bool is_implication() const { return is(Kind::Under) || is(Kind::Over); }

  const Symbol& symbol() const;
  /// Argument of an implication (left of `\`, right of `/`).
  const Type& arg() const;
  /// Result of an implication.
  const Type& result() const;
  const Type& left() const;   // Prod
  const Type& right() const;  // Prod

  /// Number of nodes.
  std::size_t size() const { return node_->size; }
  /// Connective nesting depth; atoms and Unit have depth 0.
  std::size_t depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    Symbol symbol;
    std::vector<Type> kids;  // Under: {arg, result}; Over: {result, arg}; Prod: {left, right}
    std::size_t size = 1;
    std::size_t depth = 0;
    std::size_t hash = 0;
  };
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Type make(Kind k, Symbol s, std::vector<Type> kids);

  std::shared_ptr<const Node> node_;
};

struct TypeHash {
  std::size_t operator()(const Type& t) const { return t.hash(); }
};

/// Total order used for deterministic enumeration: size, then rendering.
bool universe_less(const Type& a, const Type& b);

/// Canonical concrete syntax. `*` binds tightest and renders left-nested
/// products without parentheses; an implication nested in an implication is
/// always parenthesized. Terminal atoms that would be misread (the token `1`
/// or tokens containing syntax characters) are quoted.
std::string render(const Type& t);

/// Swaps Under and Over throughout, reversing every product.
Type mirror(const Type& t);

using TypeContext = std::vector<Type>;

struct Sequent {
  TypeContext antecedent;
  Type succedent = Type::unit();

  friend bool operator==(const Sequent&, const Sequent&) = default;
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const;
};

/// Renders `t1 , t2 |- t`. Terminal atoms in the antecedent are written as
/// bare tokens, and a Unit antecedent item is written `(1)` so it cannot be
/// confused with a terminal named `1`.
std::string render(const Sequent& s);
std::string render_item(const Type& t);

class TypeSyntaxError : public std::runtime_error {
 public:
  TypeSyntaxError(const std::string& what, std::size_t pos)
      : std::runtime_error("at position " + std::to_string(pos) + ": " + what), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Parses a type. Bare `1` is Unit; a quoted token `"x"` is always an atom.
Type parse_type(std::string_view text, const Grammar& g);

/// Parses one antecedent item: a lone token naming a terminal is that
/// terminal's atom (so `1 , = , 1` reads as three tokens); anything else is
/// parsed as a type.
Type parse_item(std::string_view text, const Grammar& g);

/// Parses `t1 , ... , tn |- t` (empty antecedent allowed).
Sequent parse_sequent(std::string_view text, const Grammar& g);

/// The antecedent reading a word token by token.
TypeContext word_context(const Word& w);

/// Subtyping a <= b read as the sequent a |- b.
Sequent subtype_as_sequent(const Type& a, const Type& b);

/// Every type over `atoms` with connective depth <= depth, plus Unit, without
/// duplicates, sorted by universe_less. Connectives combine non-unit types only.
std::vector<Type> type_universe(const std::vector<Symbol>& atoms, std::size_t depth);

/// The grammar's nonterminals as atom symbols, in name order.
std::vector<Symbol> nonterminal_atoms(const Grammar& g);

}  // namespace lambek
