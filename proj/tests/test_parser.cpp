#include <gtest/gtest.h>

#include <functional>

#include "lambek/earley.hpp"
#include "lambek/parser.hpp"
#include "oracles.hpp"

using namespace lambek;
using oracle::w;

namespace {

ParseTree node(const std::string& nt, std::vector<ParseTree> kids) {
  ParseTree t;
  t.symbol = Symbol::nonterminal(nt);
  t.children = std::move(kids);
  return t;
}
ParseTree tok(const std::string& s) { return ParseTree::leaf(s); }
ParseTree eps_node(const std::string& nt) { return node(nt, {ParseTree::epsilon_leaf()}); }

// Exact tree count for grammars without epsilon or unit productions, by
// recursion over all splits into nonempty parts.
std::size_t count_trees(const Grammar& g, const std::string& a, const Word& x, std::size_t i,
                        std::size_t j) {
  std::size_t total = 0;
  for (const auto& p : g.productions()) {
    if (p.lhs != a) continue;
    std::function<std::size_t(std::size_t, std::size_t)> go = [&](std::size_t k,
                                                                  std::size_t at) -> std::size_t {
      if (k == p.rhs.size()) return at == j ? 1 : 0;
      std::size_t sum = 0;
      for (std::size_t m = at + 1; m + (p.rhs.size() - k - 1) <= j; ++m) {
        std::size_t here = 0;
        const auto& s = p.rhs[k];
        if (s.is_terminal())
          here = (m == at + 1 && x[at] == s.name) ? 1 : 0;
        else
          here = count_trees(g, s.name, x, at, m);
        if (here) sum += here * go(k + 1, m);
      }
      return sum;
    };
    total += go(0, i);
  }
  return total;
}

}  // namespace

TEST(Recognize, Examples) {
  auto g = oracle::bool_grammar();
  EXPECT_TRUE(recognize(g, "E", w("a = b")));
  EXPECT_TRUE(recognize(g, "E", w("a = b OR 1 = 1")));
  EXPECT_TRUE(recognize(g, "E", w("a = b AND b = 1 OR 1 = a")));
  EXPECT_FALSE(recognize(g, "E", w("a = b OR")));
  EXPECT_FALSE(recognize(g, "E", w("")));
  EXPECT_FALSE(recognize(g, "T", w("a = b OR 1 = 1")));
  EXPECT_TRUE(recognize(g, "F", w("")));
  EXPECT_FALSE(recognize(g, "E", w("a = c")));
}

TEST(Recognize, IncrementalFeedUnfeed) {
  auto g = oracle::bool_grammar();
  EarleyRecognizer r(g, "E");
  EXPECT_TRUE(r.feed(w("a = b")));
  EXPECT_TRUE(r.accepted());
  EXPECT_TRUE(r.feed("OR"));
  EXPECT_FALSE(r.accepted());
  EXPECT_FALSE(r.feed("OR"));
  r.unfeed();
  EXPECT_TRUE(r.alive());
  r.unfeed();
  EXPECT_TRUE(r.accepted());
  EXPECT_EQ(r.position(), 3u);
}

TEST(ParseTree, UniqueBoolTree) {
  auto g = oracle::bool_grammar();
  auto r = parse_tree(g, "E", w("a = b OR 1 = 1"));
  ASSERT_EQ(r.kind, ParseResult::Kind::Unique);
  ASSERT_EQ(r.trees.size(), 1u);
  auto t_ab = node("T", {node("V", {tok("a")}), tok("="), node("V", {tok("b")})});
  auto t_11 = node("T", {node("V", {tok("1")}), tok("="), node("V", {tok("1")})});
  auto expected =
      node("E", {node("C", {t_ab, eps_node("D")}),
                 node("F", {tok("OR"), node("C", {t_11, eps_node("D")}), eps_node("F")})});
  EXPECT_TRUE(isomorphic(r.trees[0], expected));
  EXPECT_TRUE(oracle::tree_well_formed(g, r.trees[0]));
  EXPECT_EQ(r.trees[0].yield, w("a = b OR 1 = 1"));
}

TEST(ParseTree, Reject) {
  auto g = oracle::bool_grammar();
  EXPECT_EQ(parse_tree(g, "E", w("a = b OR")).kind, ParseResult::Kind::Reject);
  EXPECT_EQ(parse_tree(g, "E", w("a = zz")).kind, ParseResult::Kind::Reject);
  EXPECT_THROW(parse_tree(g, "Q", w("a")), GrammarError);
}

TEST(ParseTree, AmbiguousWitnessesDiffer) {
  auto g = parse_grammar("start S\nS ::= S S | x ;\n");
  auto r = parse_tree(g, "S", w("x x x"));
  ASSERT_EQ(r.kind, ParseResult::Kind::Ambiguous);
  ASSERT_EQ(r.trees.size(), 2u);
  EXPECT_FALSE(isomorphic(r.trees[0], r.trees[1]));
  for (const auto& t : r.trees) {
    EXPECT_TRUE(oracle::tree_well_formed(g, t));
    EXPECT_EQ(t.yield, w("x x x"));
  }
  EXPECT_EQ(parse_tree(g, "S", w("x x")).kind, ParseResult::Kind::Unique);
}

// Number of binary bracketings is Catalan(n-1): 1, 1, 2, 5.
TEST(ParseTree, CatalanCounts) {
  auto g = parse_grammar("start S\nS ::= S S | x ;\n");
  Word x;
  for (std::size_t n = 1; n <= 4; ++n) {
    x.push_back("x");
    std::size_t c = count_trees(g, "S", x, 0, n);
    auto kind = parse_tree(g, "S", x).kind;
    EXPECT_EQ(kind, c == 1 ? ParseResult::Kind::Unique : ParseResult::Kind::Ambiguous) << n;
  }
  EXPECT_EQ(count_trees(g, "S", w("x x x x"), 0, 4), 5u);
}

TEST(ParseTree, CyclesAreAmbiguous) {
  auto unit = parse_grammar("start S\nS ::= A | x ;\nA ::= S ;\n");
  EXPECT_EQ(parse_tree(unit, "S", w("x")).kind, ParseResult::Kind::Ambiguous);
  auto eps = parse_grammar("start S\nS ::= S E | x ;\nE ::= ;\n");
  EXPECT_EQ(parse_tree(eps, "S", w("x")).kind, ParseResult::Kind::Ambiguous);
}

// Unique/Ambiguous/Reject agrees with the exact count on random grammars.
TEST(ParseTree, RandomGrammarsMatchCount) {
  std::mt19937 rng(11);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    auto raw = oracle::random_grammar(rng, false);
    std::vector<Production> prods;
    for (const auto& p : raw.productions())
      if (!(p.rhs.size() == 1 && p.rhs[0].is_nonterminal())) prods.push_back(p);
    std::optional<Grammar> built;
    try {
      built.emplace("S", prods);
    } catch (const GrammarError&) {
      continue;
    }
    const Grammar& g = *built;
    for (const auto& x : oracle::all_words({"x", "y"}, 5)) {
      if (x.empty()) continue;
      std::size_t c = count_trees(g, "S", x, 0, x.size());
      auto r = parse_tree(g, "S", x);
      auto want = c == 0 ? ParseResult::Kind::Reject
                         : (c == 1 ? ParseResult::Kind::Unique : ParseResult::Kind::Ambiguous);
      ASSERT_EQ(r.kind, want) << join(x);
      EXPECT_EQ(recognize(g, "S", x), c > 0);
      for (const auto& t : r.trees) {
        EXPECT_TRUE(oracle::tree_well_formed(g, t));
        EXPECT_EQ(t.yield, x);
      }
      if (r.trees.size() == 2) EXPECT_FALSE(isomorphic(r.trees[0], r.trees[1]));
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000);
}

// Parsing succeeds exactly on recognized words, and every tree is well formed.
TEST(ParseTree, AgreesWithRecognizer) {
  auto g = oracle::bool_grammar();
  for (const auto& x : oracle::all_words(g.terminals(), 5)) {
    auto r = parse_tree(g, "E", x);
    ASSERT_EQ(r.accepted(), recognize(g, "E", x)) << join(x);
    ASSERT_EQ(r.accepted(), oracle::derives(g, "E", x)) << join(x);
    if (r.accepted()) {
      EXPECT_EQ(r.kind, ParseResult::Kind::Unique);
      EXPECT_TRUE(oracle::tree_well_formed(g, r.trees[0]));
    }
  }
}

TEST(Unambiguity, Examples) {
  EXPECT_FALSE(check_unambiguous(oracle::bool_grammar(), "E", 8).has_value());
  EXPECT_FALSE(check_unambiguous(oracle::eng_grammar(), "Sent", 5).has_value());
  auto g = parse_grammar("start S\nS ::= S S | x ;\n");
  auto wit = check_unambiguous(g, "S", 5);
  ASSERT_TRUE(wit.has_value());
  EXPECT_EQ(wit->word, w("x x x"));
  EXPECT_FALSE(isomorphic(wit->first, wit->second));
}

TEST(Hole, ExtendWithHole) {
  auto g = oracle::bool_grammar();
  auto [gv, mv] = extend_with_hole(g, "V");
  EXPECT_EQ(mv.hole_type, "V");
  EXPECT_EQ(mv.fresh_token, "__HOLE");
  EXPECT_EQ(gv.productions().size(), 11u);
  EXPECT_TRUE(recognize(gv, "E", w("a = __HOLE")));
  EXPECT_FALSE(recognize(gv, "E", w("__HOLE = a OR")));

  auto [gt, mt] = extend_with_hole(g, "T");
  EXPECT_TRUE(recognize(gt, "E", w("__HOLE OR a = b")));
  EXPECT_FALSE(recognize(gt, "E", w("a = __HOLE")));

  auto [g2, m2] = extend_with_hole(gv, "T");
  EXPECT_EQ(m2.fresh_token, "__HOLE1");
  EXPECT_NE(m2.fresh_token, mv.fresh_token);
  EXPECT_THROW(extend_with_hole(g, "OR"), GrammarError);
}

TEST(Render, TextAndJson) {
  auto g = oracle::bool_grammar();
  auto r = parse_tree(g, "C", w("a = b"));
  ASSERT_EQ(r.kind, ParseResult::Kind::Unique);
  EXPECT_EQ(render_tree(r.trees[0]),
            "C\n  T\n    V\n      a\n    =\n    V\n      b\n  D\n    ·eps\n");
  auto j = tree_to_json(r.trees[0]);
  EXPECT_EQ(j["sym"], "C");
  EXPECT_EQ(j["prod_index"], 3);
  EXPECT_EQ(j["children"].size(), 2u);
  EXPECT_EQ(j["children"][1]["children"][0]["eps"], true);
  EXPECT_TRUE(j["children"][0]["children"][1]["prod_index"].is_null());
}
