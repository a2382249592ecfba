#include "lambek/proof.hpp"

#include <algorithm>
#include <array>

namespace lambek {

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 13> kRuleNames{{
    {Rule::AX, "AX"},
    {Rule::CUT, "CUT"},
    {Rule::UNDER_L, "UNDER_L"},
    {Rule::UNDER_R, "UNDER_R"},
    {Rule::OVER_L, "OVER_L"},
    {Rule::OVER_R, "OVER_R"},
    {Rule::PROD_L, "PROD_L"},
    {Rule::PROD_R, "PROD_R"},
    {Rule::GRAM, "GRAM"},
    {Rule::EPS_L, "EPS_L"},
    {Rule::EPS_R, "EPS_R"},
    {Rule::CONTRACT, "CONTRACT"},
    {Rule::HYP, "HYP"},
}};

TypeContext slice(const TypeContext& c, std::size_t b, std::size_t e) {
  return TypeContext(c.begin() + b, c.begin() + e);
}

TypeContext join_ctx(std::initializer_list<TypeContext> parts) {
  TypeContext out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::string ctx_str(const TypeContext& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) out += (i ? " , " : "") + render_item(c[i]);
  return out;
}

// Empty string when the node instantiates its rule; otherwise the reason.
std::string check_node(const Grammar& g, const ProofTree& t, std::span<const Sequent> axioms) {
  const auto& gamma = t.conclusion.antecedent;
  const auto& goal = t.conclusion.succedent;
  const auto& ps = t.premises;
  auto arity = [&](std::size_t n) -> std::string {
    if (ps.size() == n) return {};
    return std::string(rule_name(t.rule)) + " needs " + std::to_string(n) + " premise(s), got " +
           std::to_string(ps.size());
  };
  auto expect_ctx = [&](const TypeContext& want) -> std::string {
    if (want == gamma) return {};
    return "antecedent should be [" + ctx_str(want) + "]";
  };
  const int idx = t.detail.index;

  switch (t.rule) {
    case Rule::AX:
      if (auto e = arity(0); !e.empty()) return e;
      if (gamma.size() != 1 || gamma[0] != goal) return "AX needs phi |- phi";
      return {};

    case Rule::EPS_R:
      if (auto e = arity(0); !e.empty()) return e;
      if (!gamma.empty() || !goal.is(Type::Kind::Unit)) return "EPS_R concludes |- 1";
      return {};

    case Rule::GRAM: {
      if (auto e = arity(0); !e.empty()) return e;
      int p = t.detail.production;
      if (p < 0 || p >= static_cast<int>(g.productions().size())) return "no such production";
      const auto& prod = g.productions()[p];
      if (goal != Type::atom(Symbol::nonterminal(prod.lhs))) return "succedent is not the lhs";
      return expect_ctx(rhs_context(prod));
    }

    case Rule::HYP: {
      if (auto e = arity(0); !e.empty()) return e;
      int a = t.detail.axiom;
      if (a < 0 || a >= static_cast<int>(axioms.size())) return "no such axiom";
      if (!(axioms[a] == t.conclusion)) return "conclusion differs from the cited axiom";
      return {};
    }

    case Rule::CUT: {
      if (auto e = arity(2); !e.empty()) return e;
      const auto& l = ps[0].conclusion;
      const auto& r = ps[1].conclusion;
      if (idx < 0 || idx >= static_cast<int>(r.antecedent.size())) return "cut index out of range";
      if (r.antecedent[idx] != l.succedent) return "cut formula mismatch";
      if (r.succedent != goal) return "succedent differs from right premise";
      return expect_ctx(join_ctx({slice(r.antecedent, 0, idx), l.antecedent,
                                  slice(r.antecedent, idx + 1, r.antecedent.size())}));
    }

    case Rule::CONTRACT: {
      if (auto e = arity(1); !e.empty()) return e;
      Type folded = Type::unit();
      TypeContext alpha;
      if (t.detail.production >= 0 && t.detail.axiom < 0) {
        if (t.detail.production >= static_cast<int>(g.productions().size()))
          return "no such production";
        const auto& prod = g.productions()[t.detail.production];
        folded = Type::atom(Symbol::nonterminal(prod.lhs));
        alpha = rhs_context(prod);
      } else if (t.detail.axiom >= 0 && t.detail.production < 0) {
        if (t.detail.axiom >= static_cast<int>(axioms.size())) return "no such axiom";
        folded = axioms[t.detail.axiom].succedent;
        alpha = axioms[t.detail.axiom].antecedent;
      } else {
        return "CONTRACT must cite exactly one production or axiom";
      }
      const auto& r = ps[0].conclusion;
      if (idx < 0 || idx >= static_cast<int>(r.antecedent.size())) return "index out of range";
      if (r.antecedent[idx] != folded) return "premise does not hold the folded symbol";
      if (r.succedent != goal) return "succedent differs from premise";
      return expect_ctx(join_ctx({slice(r.antecedent, 0, idx), alpha,
                                  slice(r.antecedent, idx + 1, r.antecedent.size())}));
    }

    case Rule::UNDER_L: {
      if (auto e = arity(2); !e.empty()) return e;
      const auto& l = ps[0].conclusion;
      const auto& r = ps[1].conclusion;
      int from = idx - static_cast<int>(l.antecedent.size());
      if (from < 0 || from >= static_cast<int>(r.antecedent.size())) return "index out of range";
      if (r.succedent != goal) return "succedent differs from right premise";
      Type principal = Type::under(l.succedent, r.antecedent[from]);
      return expect_ctx(join_ctx({slice(r.antecedent, 0, from), l.antecedent, {principal},
                                  slice(r.antecedent, from + 1, r.antecedent.size())}));
    }

    case Rule::OVER_L: {
      if (auto e = arity(2); !e.empty()) return e;
      const auto& l = ps[0].conclusion;
      const auto& r = ps[1].conclusion;
      if (idx < 0 || idx >= static_cast<int>(r.antecedent.size())) return "index out of range";
      if (r.succedent != goal) return "succedent differs from right premise";
      Type principal = Type::over(r.antecedent[idx], l.succedent);
      return expect_ctx(join_ctx({slice(r.antecedent, 0, idx), {principal}, l.antecedent,
                                  slice(r.antecedent, idx + 1, r.antecedent.size())}));
    }

    case Rule::UNDER_R: {
      if (auto e = arity(1); !e.empty()) return e;
      if (!goal.is(Type::Kind::Under)) return "succedent is not a left implication";
      const auto& p = ps[0].conclusion;
      if (p.succedent != goal.result()) return "premise succedent mismatch";
      if (p.antecedent != join_ctx({{goal.arg()}, gamma}))
        return "premise antecedent should be the argument followed by the conclusion's";
      return {};
    }

    case Rule::OVER_R: {
      if (auto e = arity(1); !e.empty()) return e;
      if (!goal.is(Type::Kind::Over)) return "succedent is not a right implication";
      const auto& p = ps[0].conclusion;
      if (p.succedent != goal.result()) return "premise succedent mismatch";
      if (p.antecedent != join_ctx({gamma, {goal.arg()}}))
        return "premise antecedent should be the conclusion's followed by the argument";
      return {};
    }

    case Rule::PROD_L: {
      if (auto e = arity(1); !e.empty()) return e;
      if (idx < 0 || idx >= static_cast<int>(gamma.size()) || !gamma[idx].is(Type::Kind::Prod))
        return "index does not point at a product";
      const auto& p = ps[0].conclusion;
      if (p.succedent != goal) return "succedent differs from premise";
      TypeContext want = join_ctx({slice(gamma, 0, idx), {gamma[idx].left(), gamma[idx].right()},
                                   slice(gamma, idx + 1, gamma.size())});
      if (p.antecedent != want) return "premise must split the product in place";
      return {};
    }

    case Rule::PROD_R: {
      if (auto e = arity(2); !e.empty()) return e;
      if (!goal.is(Type::Kind::Prod)) return "succedent is not a product";
      const auto& l = ps[0].conclusion;
      const auto& r = ps[1].conclusion;
      if (l.succedent != goal.left() || r.succedent != goal.right())
        return "premise succedents do not match the product";
      return expect_ctx(join_ctx({l.antecedent, r.antecedent}));
    }

    case Rule::EPS_L: {
      if (auto e = arity(1); !e.empty()) return e;
      if (idx < 0 || idx >= static_cast<int>(gamma.size()) || !gamma[idx].is(Type::Kind::Unit))
        return "index does not point at 1";
      const auto& p = ps[0].conclusion;
      if (p.succedent != goal) return "succedent differs from premise";
      if (p.antecedent != join_ctx({slice(gamma, 0, idx), slice(gamma, idx + 1, gamma.size())}))
        return "premise must drop the unit";
      return {};
    }
  }
  return "unknown rule";
}

bool check_rec(const Grammar& g, const ProofTree& t, std::span<const Sequent> axioms,
               CheckResult& out) {
  if (auto why = check_node(g, t, axioms); !why.empty()) {
    out.ok = false;
    out.reason = std::string(rule_name(t.rule)) + ": " + why;
    return false;
  }
  for (std::size_t i = 0; i < t.premises.size(); ++i) {
    out.path.push_back(i);
    if (!check_rec(g, t.premises[i], axioms, out)) return false;
    out.path.pop_back();
  }
  return true;
}

void render_rec(const Grammar& g, const ProofTree& t, std::span<const Sequent> axioms,
                std::size_t depth, std::string& out) {
  out.append(depth * 2, ' ');
  out += render(t.conclusion);
  out += "   [";
  out += rule_name(t.rule);
  if ((t.rule == Rule::GRAM || t.rule == Rule::CONTRACT) && t.detail.production >= 0 &&
      t.detail.production < static_cast<int>(g.productions().size()))
    out += ": " + to_string(g.productions()[t.detail.production]);
  else if ((t.rule == Rule::HYP || t.rule == Rule::CONTRACT) && t.detail.axiom >= 0 &&
           t.detail.axiom < static_cast<int>(axioms.size()))
    out += ": " + render(axioms[t.detail.axiom]);
  out += "]\n";
  for (const auto& p : t.premises) render_rec(g, p, axioms, depth + 1, out);
}

}  // namespace

std::string_view rule_name(Rule r) {
  for (const auto& [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& [rule, n] : kRuleNames)
    if (n == name) return rule;
  return std::nullopt;
}

std::size_t ProofTree::size() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

std::size_t ProofTree::height() const {
  std::size_t h = 0;
  for (const auto& p : premises) h = std::max(h, p.height());
  return h + 1;
}

bool ProofTree::uses(Rule r) const {
  if (rule == r) return true;
  return std::any_of(premises.begin(), premises.end(), [&](const auto& p) { return p.uses(r); });
}

TypeContext rhs_context(const Production& p) {
  TypeContext out;
  for (const auto& s : p.rhs) out.push_back(Type::atom(s));
  return out;
}

CheckResult check_proof(const Grammar& g, const ProofTree& t, std::span<const Sequent> axioms) {
  CheckResult r;
  check_rec(g, t, axioms, r);
  if (r.ok) r.path.clear();
  return r;
}

ProofTree expand_contractions(const Grammar& g, const ProofTree& t,
                              std::span<const Sequent> axioms) {
  ProofTree out = t;
  out.premises.clear();
  for (const auto& p : t.premises) out.premises.push_back(expand_contractions(g, p, axioms));
  if (t.rule != Rule::CONTRACT) return out;
  ProofTree left;
  if (t.detail.production >= 0) {
    left = gram_leaf(g, t.detail.production);
  } else {
    left.conclusion = axioms[t.detail.axiom];
    left.rule = Rule::HYP;
    left.detail.axiom = t.detail.axiom;
  }
  out.rule = Rule::CUT;
  out.detail = RuleDetail{-1, -1, t.detail.index};
  out.premises.insert(out.premises.begin(), std::move(left));
  return out;
}

std::string render_proof(const Grammar& g, const ProofTree& t, std::span<const Sequent> axioms) {
  std::string out;
  render_rec(g, t, axioms, 0, out);
  return out;
}

nlohmann::json proof_to_json(const ProofTree& t) {
  nlohmann::json j;
  auto& ante = j["conclusion"]["antecedent"] = nlohmann::json::array();
  for (const auto& x : t.conclusion.antecedent) ante.push_back(render_item(x));
  j["conclusion"]["succedent"] = render(t.conclusion.succedent);
  j["rule"] = std::string(rule_name(t.rule));
  auto& d = j["detail"] = nlohmann::json::object();
  if (t.detail.production >= 0) d["production"] = t.detail.production;
  if (t.detail.axiom >= 0) d["axiom"] = t.detail.axiom;
  if (t.detail.index >= 0) d["index"] = t.detail.index;
  auto& ps = j["premises"] = nlohmann::json::array();
  for (const auto& p : t.premises) ps.push_back(proof_to_json(p));
  return j;
}

ProofTree proof_from_json(const nlohmann::json& j, const Grammar& g) {
  ProofTree t;
  for (const auto& item : j.at("conclusion").at("antecedent"))
    t.conclusion.antecedent.push_back(parse_item(item.get<std::string>(), g));
  t.conclusion.succedent = parse_type(j.at("conclusion").at("succedent").get<std::string>(), g);
  auto name = j.at("rule").get<std::string>();
  auto rule = rule_from_name(name);
  if (!rule) throw std::invalid_argument("unknown rule '" + name + "'");
  t.rule = *rule;
  const auto& d = j.value("detail", nlohmann::json::object());
  t.detail.production = d.value("production", -1);
  t.detail.axiom = d.value("axiom", -1);
  t.detail.index = d.value("index", -1);
  for (const auto& p : j.at("premises")) t.premises.push_back(proof_from_json(p, g));
  return t;
}

ProofTree axiom_leaf(const Type& t) { return ProofTree{Sequent{{t}, t}, Rule::AX, {}, {}}; }

ProofTree gram_leaf(const Grammar& g, std::size_t production) {
  const auto& p = g.productions().at(production);
  return ProofTree{Sequent{rhs_context(p), Type::atom(Symbol::nonterminal(p.lhs))}, Rule::GRAM,
                   RuleDetail{static_cast<int>(production), -1, -1}, {}};
}

ProofTree elim_under(const ProofTree& left, const ProofTree& right) {
  const auto& f = right.conclusion.succedent;
  if (!f.is(Type::Kind::Under) || f.arg() != left.conclusion.succedent)
    throw TacticError("elim_under: right premise must prove " +
                      render(left.conclusion.succedent) + "\\<psi>, got " + render(f));
  const auto& phi_ctx = left.conclusion.antecedent;
  const int k = static_cast<int>(phi_ctx.size());
  ProofTree ul{Sequent{join_ctx({phi_ctx, {f}}), f.result()},
               Rule::UNDER_L,
               RuleDetail{-1, -1, k},
               {left, axiom_leaf(f.result())}};
  return ProofTree{Sequent{join_ctx({phi_ctx, right.conclusion.antecedent}), f.result()},
                   Rule::CUT,
                   RuleDetail{-1, -1, k},
                   {right, std::move(ul)}};
}

ProofTree elim_over(const ProofTree& left, const ProofTree& right) {
  const auto& f = left.conclusion.succedent;
  if (!f.is(Type::Kind::Over) || f.arg() != right.conclusion.succedent)
    throw TacticError("elim_over: left premise must prove <psi>/" +
                      render(right.conclusion.succedent) + ", got " + render(f));
  ProofTree ol{Sequent{join_ctx({{f}, right.conclusion.antecedent}), f.result()},
               Rule::OVER_L,
               RuleDetail{-1, -1, 0},
               {right, axiom_leaf(f.result())}};
  return ProofTree{
      Sequent{join_ctx({left.conclusion.antecedent, right.conclusion.antecedent}), f.result()},
      Rule::CUT,
      RuleDetail{-1, -1, 0},
      {left, std::move(ol)}};
}

ProofTree dni(const ProofTree& t, const Type& psi, Side side) {
  const auto& ctx = t.conclusion.antecedent;
  const auto& phi = t.conclusion.succedent;
  if (side == Side::Left) {
    Type raised = Type::over(psi, phi);
    ProofTree ol{Sequent{join_ctx({{raised}, ctx}), psi}, Rule::OVER_L, RuleDetail{-1, -1, 0},
                 {t, axiom_leaf(psi)}};
    return ProofTree{Sequent{ctx, Type::under(raised, psi)}, Rule::UNDER_R, {}, {std::move(ol)}};
  }
  Type raised = Type::under(phi, psi);
  ProofTree ul{Sequent{join_ctx({ctx, {raised}}), psi}, Rule::UNDER_L,
               RuleDetail{-1, -1, static_cast<int>(ctx.size())}, {t, axiom_leaf(psi)}};
  return ProofTree{Sequent{ctx, Type::over(psi, raised)}, Rule::OVER_R, {}, {std::move(ul)}};
}

}  // namespace lambek
