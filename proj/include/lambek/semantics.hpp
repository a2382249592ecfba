#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>

#include "lambek/earley.hpp"
#include "lambek/grammar.hpp"
#include "lambek/types.hpp"

namespace lambek {

/// Test words in implication clauses are limited to max_len tokens over the
/// alphabet (default: the grammar's terminals).
struct SemBound {
  std::size_t max_len = 4;
  std::optional<std::set<std::string>> alphabet;
};

/// Bounded denotations with memoization. Because implications only look at
/// finitely many test words, membership over-approximates the real
/// denotation: a negative answer is exact, a positive one is not.
///
/// Holds a reference to the grammar; not thread-safe (use one per thread).
class Semantics {
 public:
  Semantics(const Grammar& g, SemBound b);

  const Grammar& grammar() const { return g_; }
  const std::set<std::string>& alphabet() const { return alphabet_; }
  std::size_t max_len() const { return max_len_; }

  bool member(const Word& w, const Type& t);
  /// Words of length <= out_len over the alphabet that are members.
  const WordSet& denotation(const Type& t, std::size_t out_len);
  /// Concatenations of members of each item, total length <= out_len.
  WordSet context_denotation(const TypeContext& ctx, std::size_t out_len);
  /// First word (ShortLex) in the antecedent's denotation that is not a
  /// member of the succedent.
  std::optional<Word> counterexample(const Sequent& s, std::size_t out_len);

 private:
  struct MemberKey {
    Type t;
    Word w;
    bool operator==(const MemberKey&) const = default;
  };
  struct MemberKeyHash {
    std::size_t operator()(const MemberKey& k) const;
  };
  struct DenKey {
    Type t;
    std::size_t out;
    bool operator==(const DenKey&) const = default;
  };
  struct DenKeyHash {
    std::size_t operator()(const DenKey& k) const { return k.t.hash() * 131 + k.out; }
  };

  bool recognize_atom(const std::string& nt, const Word& w);
  bool over_alphabet(const Word& w) const;
  WordSet all_words(std::size_t out_len) const;
  WordSet compute_denotation(const Type& t, std::size_t out_len);

  const Grammar& g_;
  std::size_t max_len_;
  std::set<std::string> alphabet_;
  std::map<std::string, std::unique_ptr<EarleyRecognizer>> recognizers_;
  std::unordered_map<MemberKey, bool, MemberKeyHash> member_memo_;
  std::unordered_map<DenKey, WordSet, DenKeyHash> den_memo_;
};

bool member_bounded(const Grammar& g, const Word& w, const Type& t, const SemBound& b);
WordSet denotation_bounded(const Grammar& g, const Type& t, const SemBound& b,
                           std::size_t out_len);
WordSet context_denotation_bounded(const Grammar& g, const TypeContext& ctx, const SemBound& b,
                                   std::size_t out_len);
/// nullopt is Pass.
std::optional<Word> soundness_check(const Grammar& g, const Sequent& s, const SemBound& b,
                                    std::size_t out_len);

/// A grammar in which extra typing axioms hold at the given bound: every
/// word an axiom forces into an atom is added as a production `A ::= w`,
/// repeated until nothing changes. `closed` is false when some axiom could
/// not be satisfied this way (units, products or terminal succedents) or the
/// round limit was hit.
struct AxiomModel {
  Grammar grammar;
  std::vector<Production> added;
  bool closed = false;
};

AxiomModel axiom_model(const Grammar& g, std::span<const Sequent> axioms, const SemBound& b,
                       std::size_t max_rounds = 8);

}  // namespace lambek
