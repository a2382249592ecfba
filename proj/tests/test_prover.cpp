#include <gtest/gtest.h>

#include "corpus.hpp"
#include "lambek/proof.hpp"
#include "lambek/prover.hpp"
#include "lambek/semantics.hpp"
#include "oracles.hpp"

using namespace lambek;

namespace {

const Grammar& bool_g() {
  static const Grammar g = oracle::bool_grammar();
  return g;
}

Sequent seq(const std::string& s) { return parse_sequent(s, bool_g()); }
Type ty(const std::string& s) { return parse_type(s, bool_g()); }

ProofTree proved(const std::string& s) {
  auto r = prove(bool_g(), seq(s));
  if (!r.proved()) throw std::runtime_error("not proved: " + s);
  return *r.proof;
}

std::size_t count_rule(const ProofTree& t, Rule r) {
  std::size_t n = t.rule == r;
  for (const auto& p : t.premises) n += count_rule(p, r);
  return n;
}

std::size_t count_lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

std::vector<Type> sample_types() {
  std::vector<Symbol> atoms{Symbol::nonterminal("T"), Symbol::nonterminal("V")};
  std::vector<Type> out;
  for (const auto& t : type_universe(atoms, 1))
    if (!t.is(Type::Kind::Unit)) out.push_back(t);
  return out;
}

}  // namespace

TEST(Prove, BoolJudgments) {
  for (const char* s : {"a , = |- T/V", "a , = , b |- T", "b , OR , 1 , = , 1 |- (T/V)\\E",
                        "a , = , b , OR , 1 , = , 1 |- E", "1 , = , 1 , OR , b |- E/(V\\T)",
                        "|- 1"}) {
    auto r = prove(bool_g(), seq(s));
    ASSERT_TRUE(r.proved()) << s;
    EXPECT_EQ(r.proof->conclusion, seq(s));
    auto c = check_proof(bool_g(), *r.proof);
    EXPECT_TRUE(c.ok) << s << ": " << c.reason;
  }
  EXPECT_EQ(proved("|- 1").rule, Rule::EPS_R);
}

// With only T ::= V = V, "u OR v" is never a T-word, so neither judgment holds
// in the language semantics; the prover must not find them and the bounded
// semantics must refute them.
TEST(Prove, OperatorAsTestOperatorIsNotValid) {
  for (const char* s : {"OR |- (T\\T)/T", "OR , 1 , = , 1 |- T\\T"}) {
    auto r = prove(bool_g(), seq(s));
    EXPECT_EQ(r.outcome, SearchResult::Outcome::NotFoundWithinBounds) << s;
    auto cex = soundness_check(bool_g(), seq(s), SemBound{4, std::nullopt}, 5);
    ASSERT_TRUE(cex.has_value()) << s;
  }
  EXPECT_EQ(*soundness_check(bool_g(), seq("OR |- (T\\T)/T"), SemBound{4, std::nullopt}, 4),
            oracle::w("OR"));
  oracle::BruteSemantics brute(bool_g(), 3);
  EXPECT_FALSE(brute.member(oracle::w("OR"), ty("(T\\T)/T")));
  EXPECT_FALSE(brute.member(oracle::w("OR 1 = 1"), ty("T\\T")));
  EXPECT_TRUE(brute.member(oracle::w("OR 1 = 1"), ty("T\\E")));
}

TEST(Prove, NonJudgment) {
  auto r = prove(bool_g(), seq("b , OR , 1 , = , 1 |- V"));
  EXPECT_EQ(r.outcome, SearchResult::Outcome::NotFoundWithinBounds);
  EXPECT_FALSE(r.proof.has_value());
  EXPECT_FALSE(oracle::derives(bool_g(), "V", oracle::w("b OR 1 = 1")));
}

TEST(Prove, EnglishWithPronounAxioms) {
  auto g = oracle::eng_grammar();
  auto ax = oracle::pronoun_axioms(g);
  for (const char* s : {"Alice , knows , Bob |- Sent", "he , knows , Alice |- Sent",
                        "Alice , knows , him |- Sent"}) {
    auto r = prove(g, parse_sequent(s, g), {}, ax);
    ASSERT_TRUE(r.proved()) << s;
    EXPECT_TRUE(check_proof(g, *r.proof, ax).ok) << s;
  }
  auto he = prove(g, parse_sequent("he , knows , Alice |- Sent", g), {}, ax);
  EXPECT_TRUE(he.proof->uses(Rule::CONTRACT) || he.proof->uses(Rule::HYP));
  auto bad = prove(g, parse_sequent("him , knows , Alice |- Sent", g), {}, ax);
  EXPECT_EQ(bad.outcome, SearchResult::Outcome::NotFoundWithinBounds);
  EXPECT_FALSE(prove(g, parse_sequent("he , knows , Alice |- Sent", g)).proved());
}

TEST(Prove, OracleRefutation) {
  SearchConfig cfg;
  cfg.oracle_prescreen = true;
  auto r = prove(bool_g(), seq("V |- T"), cfg);
  EXPECT_EQ(r.outcome, SearchResult::Outcome::RefutedByOracle);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(*r.counterexample, oracle::w("1"));
  EXPECT_TRUE(prove(bool_g(), seq("a , = , b |- T"), cfg).proved());
}

TEST(Prove, GeneralCutStaysSound) {
  SearchConfig cfg;
  cfg.enable_general_cut = true;
  auto r = prove(bool_g(), seq("a , = , b |- T"), cfg);
  ASSERT_TRUE(r.proved());
  EXPECT_TRUE(check_proof(bool_g(), *r.proof).ok);
  cfg.max_depth = 8;
  EXPECT_FALSE(prove(bool_g(), seq("V |- T"), cfg).proved());
}

TEST(Prove, NodeCap) {
  SearchConfig cfg;
  cfg.max_nodes = 5;
  auto r = prove(bool_g(), seq("a , = , b , OR , 1 , = , 1 |- E"), cfg);
  EXPECT_FALSE(r.proved());
  EXPECT_TRUE(r.node_cap_hit);
  EXPECT_LE(r.nodes, 6u);
}

TEST(Prove, Deterministic) {
  auto s = seq("b , OR , 1 , = , 1 |- (T/V)\\E");
  auto a = render_proof(bool_g(), *prove(bool_g(), s).proof);
  auto b = render_proof(bool_g(), *prove(bool_g(), s).proof);
  EXPECT_EQ(a, b);
}

TEST(Prove, AssociativityAndUnitLaws) {
  auto ts = sample_types();
  for (std::size_t i = 0; i < ts.size(); i += 3)
    for (std::size_t j = 1; j < ts.size(); j += 4) {
      const auto& p = ts[i];
      const auto& q = ts[j];
      const auto& r = ts[(i + j) % ts.size()];
      auto left = Type::prod(p, Type::prod(q, r));
      auto right = Type::prod(Type::prod(p, q), r);
      EXPECT_TRUE(prove(bool_g(), {{left}, right}).proved()) << render(left);
      EXPECT_TRUE(prove(bool_g(), {{right}, left}).proved()) << render(right);
    }
  for (const auto& t : ts) {
    auto a = prove(bool_g(), {{Type::prod(Type::unit(), t)}, t});
    auto b = prove(bool_g(), {{t}, Type::prod(t, Type::unit())});
    ASSERT_TRUE(a.proved() && b.proved()) << render(t);
    EXPECT_TRUE(check_proof(bool_g(), *a.proof).ok);
    EXPECT_TRUE(check_proof(bool_g(), *b.proof).ok);
  }
}

TEST(Prove, MixedImplicationIsomorphism) {
  auto ts = sample_types();
  for (std::size_t i = 0; i < ts.size(); i += 2) {
    const auto& a = ts[i];
    const auto& b = ts[(i + 5) % ts.size()];
    const auto& c = ts[(i + 9) % ts.size()];
    auto l = Type::over(Type::under(a, b), c);
    auto r = Type::under(a, Type::over(b, c));
    EXPECT_TRUE(prove(bool_g(), {{l}, r}).proved()) << render(l);
    EXPECT_TRUE(prove(bool_g(), {{r}, l}).proved()) << render(r);
  }
}

TEST(Prove, ResiduationAgreementSample) {
  auto ts = sample_types();
  int n = 0;
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = 0; j < ts.size(); j += 3) {
      const auto& phi = ts[i];
      const auto& psi = ts[j];
      const auto& pi = ts[(i * 7 + j) % ts.size()];
      bool a = prove(bool_g(), {{Type::prod(phi, psi)}, pi}).proved();
      bool b = prove(bool_g(), {{psi}, Type::under(phi, pi)}).proved();
      bool c = prove(bool_g(), {{phi}, Type::over(pi, psi)}).proved();
      EXPECT_EQ(a, b) << render(phi) << " " << render(psi) << " " << render(pi);
      EXPECT_EQ(a, c) << render(phi) << " " << render(psi) << " " << render(pi);
      ++n;
    }
  EXPECT_GE(n, 50);
}

TEST(Check, AcceptsAndRejects) {
  auto ax = axiom_leaf(ty("T"));
  EXPECT_TRUE(check_proof(bool_g(), ax).ok);
  auto bad_ax = ax;
  bad_ax.conclusion.succedent = ty("V");
  EXPECT_FALSE(check_proof(bool_g(), bad_ax).ok);

  auto g = gram_leaf(bool_g(), 7);
  EXPECT_EQ(render(g.conclusion), "1 |- V");
  EXPECT_TRUE(check_proof(bool_g(), g).ok);
  auto wrong = g;
  wrong.detail.production = 8;
  EXPECT_FALSE(check_proof(bool_g(), wrong).ok);
  wrong.detail.production = 99;
  EXPECT_FALSE(check_proof(bool_g(), wrong).ok);
}

TEST(Check, SwappedOverLPremisesRejectedWithPath) {
  auto p = proved("b , OR , 1 , = , 1 |- (T/V)\\E");
  ASSERT_EQ(p.rule, Rule::UNDER_R);
  ASSERT_EQ(p.premises[0].rule, Rule::OVER_L);
  std::swap(p.premises[0].premises[0], p.premises[0].premises[1]);
  auto c = check_proof(bool_g(), p);
  EXPECT_FALSE(c.ok);
  EXPECT_EQ(c.path, (std::vector<std::size_t>{0}));
  EXPECT_FALSE(c.reason.empty());
}

TEST(Check, TamperedConclusionRejected) {
  auto p = proved("a , = , b |- T");
  p.premises.back().conclusion.antecedent.pop_back();
  EXPECT_FALSE(check_proof(bool_g(), p).ok);
}

TEST(Check, ContractionsExpandToCuts) {
  auto p = proved("a , = , b , OR , 1 , = , 1 |- E");
  ASSERT_TRUE(p.uses(Rule::CONTRACT));
  auto e = expand_contractions(bool_g(), p);
  EXPECT_FALSE(e.uses(Rule::CONTRACT));
  EXPECT_EQ(count_rule(e, Rule::CUT), count_rule(p, Rule::CONTRACT));
  EXPECT_TRUE(check_proof(bool_g(), e).ok);
  EXPECT_EQ(e.conclusion, p.conclusion);
}

TEST(Tactics, EliminationChains) {
  auto left = proved("a , = |- T/V");
  auto t = elim_over(left, proved("b |- V"));
  EXPECT_EQ(t.conclusion, seq("a , = , b |- T"));
  EXPECT_TRUE(check_proof(bool_g(), t).ok);

  auto attack = elim_under(left, proved("b , OR , 1 , = , 1 |- (T/V)\\E"));
  EXPECT_EQ(attack.conclusion, seq("a , = , b , OR , 1 , = , 1 |- E"));
  EXPECT_TRUE(check_proof(bool_g(), attack).ok);

  EXPECT_THROW(elim_under(proved("b |- V"), axiom_leaf(ty("T\\E"))), TacticError);
  EXPECT_THROW(elim_over(axiom_leaf(ty("T/V")), proved("a , = , b |- T")), TacticError);
}

TEST(Tactics, DoubleNegationIntroduction) {
  auto b = proved("b |- V");
  auto l = dni(b, ty("T"), Side::Left);
  EXPECT_EQ(l.conclusion, seq("b |- (T/V)\\T"));
  EXPECT_TRUE(check_proof(bool_g(), l).ok);
  auto r = dni(axiom_leaf(ty("T")), ty("E"), Side::Right);
  EXPECT_EQ(r.conclusion, seq("T |- E/(T\\E)"));
  EXPECT_TRUE(check_proof(bool_g(), r).ok);
  auto twice = dni(dni(b, ty("T"), Side::Left), ty("E"), Side::Right);
  EXPECT_EQ(twice.conclusion.succedent, ty("E/(((T/V)\\T)\\E)"));
  EXPECT_TRUE(check_proof(bool_g(), twice).ok);
  EXPECT_TRUE(prove(bool_g(), l.conclusion).proved());
  EXPECT_TRUE(prove(bool_g(), twice.conclusion).proved());
}

TEST(Render, Text) {
  EXPECT_EQ(render_proof(bool_g(), axiom_leaf(ty("T"))), "T |- T   [AX]\n");
  auto p = proved("b , OR , 1 , = , 1 |- (T/V)\\E");
  auto text = render_proof(bool_g(), p);
  EXPECT_EQ(text.rfind("b , OR , 1 , = , 1 |- (T/V)\\E   [UNDER_R]\n", 0), 0u);
  EXPECT_EQ(count_rule(p, Rule::UNDER_R), 1u);
  EXPECT_EQ(count_lines(text), p.size());
  EXPECT_NE(text.find("    b |- V   [GRAM: V ::= b]\n"), std::string::npos);
  EXPECT_NE(text.find("[CONTRACT: D ::= ε]"), std::string::npos);
}

TEST(Render, JsonRoundTrip) {
  for (const char* s : {"a , = , b , OR , 1 , = , 1 |- E", "|- 1", "1 , = , 1 , OR , b |- E/(V\\T)"}) {
    auto p = proved(s);
    auto j = proof_to_json(p);
    EXPECT_EQ(j["rule"], std::string(rule_name(p.rule)));
    EXPECT_TRUE(j["conclusion"]["antecedent"].is_array());
    auto back = proof_from_json(nlohmann::json::parse(j.dump()), bool_g());
    EXPECT_TRUE(check_proof(bool_g(), back).ok) << s;
    EXPECT_EQ(render_proof(bool_g(), back), render_proof(bool_g(), p));
  }
  for (int r = 0; r <= static_cast<int>(Rule::HYP); ++r)
    EXPECT_EQ(rule_from_name(rule_name(static_cast<Rule>(r))), static_cast<Rule>(r));
  EXPECT_FALSE(rule_from_name("NOPE").has_value());
}

// Every proof found is accepted by the checker and refuted by no bounded
// model, checked at two bounds.
TEST(Soundness, CorpusProofs) {
  auto entries = corpus::bool_corpus(bool_g(), 40);
  ASSERT_GE(entries.size(), 40u);
  oracle::BruteSemantics brute(bool_g(), 3);
  for (const auto& e : entries) {
    EXPECT_TRUE(check_proof(bool_g(), e.proof).ok) << render(e.sequent);
    Word x;
    for (const auto& t : e.sequent.antecedent) x.push_back(t.symbol().name);
    EXPECT_TRUE(brute.member(x, e.sequent.succedent)) << render(e.sequent);
    for (std::size_t L : {3u, 6u})
      EXPECT_FALSE(soundness_check(bool_g(), e.sequent, SemBound{L, std::nullopt}, 6))
          << render(e.sequent) << " L=" << L;
  }
}
