#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "lambek/grammar.hpp"
#include "lambek/proof.hpp"
#include "lambek/types.hpp"

namespace lambek {

struct SearchConfig {
  std::size_t max_depth = 40;
  /// Bare nullable insertions allowed per branch. Nullable symbols elided
  /// while folding a production that also consumes part of the antecedent
  /// are not counted.
  std::size_t insert_budget = 2;
  bool enable_general_cut = false;
  std::size_t cut_formula_depth = 1;
  /// Hard cap on expanded goals; hitting it yields NotFoundWithinBounds.
  std::size_t max_nodes = 2'000'000;
  /// Ask the bounded semantics for a counterexample before searching.
  bool oracle_prescreen = false;
  std::size_t oracle_len = 4;
};

struct SearchResult {
  enum class Outcome { Proved, NotFoundWithinBounds, RefutedByOracle };

  Outcome outcome = Outcome::NotFoundWithinBounds;
  std::optional<ProofTree> proof;
  std::optional<Word> counterexample;
  std::size_t nodes = 0;
  bool node_cap_hit = false;

  bool proved() const { return outcome == Outcome::Proved; }
};

std::string_view outcome_name(SearchResult::Outcome o);

/// Backward proof search. Deterministic: equal inputs give identical proofs.
///
/// Right implications, left products and left units are decomposed eagerly
/// (they are invertible). The grammar enters through GRAM leaves and through
/// CONTRACT, a cut whose left premise is a production (or an extra axiom).
/// A single backward step may fold a production whose nullable symbols are
/// partly absent from the antecedent; the proof spells that out as one
/// CONTRACT per production used.
SearchResult prove(const Grammar& g, const Sequent& s, const SearchConfig& cfg = {},
                   std::span<const Sequent> axioms = {});

}  // namespace lambek
