#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lambek/grammar.hpp"
#include "lambek/parser.hpp"
#include "lambek/proof.hpp"
#include "lambek/prover.hpp"
#include "lambek/semantics.hpp"
#include "lambek/types.hpp"

namespace lambek {

/// prefix . <hole> . suffix, where the hole should hold an `expected` and the
/// whole should be a `goal`.
struct InjectionContext {
  Word prefix;
  Word suffix;
  std::string goal;
  std::string expected;
};

class ContextError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ContextError unless goal and expected are nonterminals and
/// prefix . expected . suffix derives from goal.
void validate_context(const Grammar& g, const InjectionContext& ctx);

std::string render_context(const InjectionContext& ctx);

/// {w : |w| <= out_len, prefix . w . suffix is a goal word}, by depth-first
/// enumeration over the grammar's terminals pruned by viable prefixes.
WordSet hole_language(const Grammar& g, const InjectionContext& ctx, std::size_t out_len);

struct Typing {
  Type type;
  ProofTree proof;
};

/// Every type of the universe over `atoms` up to `depth` that w provably has,
/// in universe order.
std::vector<Typing> infer_typings(const Grammar& g, const Word& w,
                                  const std::vector<Symbol>& atoms, std::size_t depth,
                                  const SearchConfig& cfg, std::span<const Sequent> axioms = {});

enum class Direction { Left, Right };
std::string_view direction_name(Direction d);

/// Left:  w |- (psi/X)\pi   w takes the context on its left as its argument.
/// Right: w |- pi/(X\psi)   same, with the context on the right.
/// X is the expected category.
struct CaptureTyping {
  Direction direction;
  Type psi;
  Type pi;
  Type full_type;
  ProofTree proof;
};

Type capture_type(Direction d, const Type& expected, const Type& psi, const Type& pi);

enum class Reshaping { ConservativeExtension, Reshaped, Unparseable };
std::string_view reshaping_name(Reshaping r);

struct ReshapeResult {
  Reshaping verdict = Reshaping::Unparseable;
  std::optional<ParseTree> context_tree;
  std::optional<ParseTree> combined_tree;
};

/// Compares the parse of prefix . w . suffix with the partial parse of the
/// context. Throws AmbiguityError if either parse is ambiguous.
ReshapeResult reshaping_check(const Grammar& g, const InjectionContext& ctx, const Word& w);

enum class Classification { Benign, Capturing, IllFormed, Unknown };
std::string_view classification_name(Classification c);

struct AnalyzerOptions {
  /// Universe depth for psi and pi inside the capture shapes.
  std::size_t capture_depth = 0;
  /// Only count a capture whose shape fits the surrounding context: for a
  /// left capture the prefix must prove psi/X and pi . suffix must prove the
  /// goal (mirrored for the right).
  bool require_fit = true;
};

struct InjectionReport {
  Classification classification = Classification::Unknown;
  Word input;
  InjectionContext context;
  std::optional<ProofTree> benign_proof;
  std::vector<CaptureTyping> captures;
  bool combined_parses = false;
  ReshapeResult reshaping;
  SearchConfig search;
  SemBound bound;
};

InjectionReport classify_input(const Grammar& g, const InjectionContext& ctx, const Word& w,
                               const SearchConfig& cfg, const SemBound& b,
                               const AnalyzerOptions& opts = {},
                               std::span<const Sequent> axioms = {});

nlohmann::json report_to_json(const InjectionReport& r);
std::string render_report(const InjectionReport& r);

}  // namespace lambek
