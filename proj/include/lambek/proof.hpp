#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lambek/grammar.hpp"
#include "lambek/types.hpp"

namespace lambek {

enum class Rule {
  AX,
  CUT,
  UNDER_L,
  UNDER_R,
  OVER_L,
  OVER_R,
  PROD_L,
  PROD_R,
  GRAM,
  EPS_L,
  EPS_R,
  CONTRACT,
  HYP,  // leaf citing an extra axiom supplied by the caller
};

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);

// Which fields matter depends on the rule:
//   GRAM, CONTRACT   production (or axiom, for a CONTRACT against an extra axiom)
//   HYP              axiom
//   CUT, CONTRACT    index: position of the cut formula in the right premise,
//                    which is also where the spliced segment starts in the conclusion
//   UNDER_L, OVER_L, PROD_L, EPS_L
//                    index: position of the principal formula in the conclusion
struct RuleDetail {
  int production = -1;
  int axiom = -1;
  int index = -1;

  bool operator==(const RuleDetail&) const = default;
};

struct ProofTree {
  Sequent conclusion;
  Rule rule = Rule::AX;
  RuleDetail detail;
  std::vector<ProofTree> premises;

  std::size_t size() const;
  std::size_t height() const;
  bool uses(Rule r) const;
};

struct CheckResult {
  bool ok = true;
  std::vector<std::size_t> path;  // premise indices from the root to the offending node
  std::string reason;
};

/// Re-derives every conclusion from its premises and the rule schema.
/// CONTRACT is validated as the CUT it abbreviates, with a GRAM (or HYP)
/// left premise.
CheckResult check_proof(const Grammar& g, const ProofTree& t,
                        std::span<const Sequent> axioms = {});

/// The CUT + GRAM/HYP pair a CONTRACT node stands for, recursively.
ProofTree expand_contractions(const Grammar& g, const ProofTree& t,
                              std::span<const Sequent> axioms = {});

/// One sequent per line, child premises indented two spaces:
///   `b |- V   [GRAM: V ::= b]`
std::string render_proof(const Grammar& g, const ProofTree& t,
                         std::span<const Sequent> axioms = {});
nlohmann::json proof_to_json(const ProofTree& t);
ProofTree proof_from_json(const nlohmann::json& j, const Grammar& g);

class TacticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The right-hand side of a production read as an antecedent of atoms.
TypeContext rhs_context(const Production& p);

// Leaf constructors.
ProofTree axiom_leaf(const Type& t);
ProofTree gram_leaf(const Grammar& g, std::size_t production);

/// From Phi |- phi and Psi |- phi\psi, a proof of Phi , Psi |- psi.
ProofTree elim_under(const ProofTree& left, const ProofTree& right);
/// From Psi |- psi/phi and Phi |- phi, a proof of Psi , Phi |- psi.
ProofTree elim_over(const ProofTree& left, const ProofTree& right);

enum class Side { Left, Right };
/// Left:  Phi |- (psi/phi)\psi.   Right: Phi |- psi/(phi\psi).
ProofTree dni(const ProofTree& t, const Type& psi, Side side);

}  // namespace lambek
