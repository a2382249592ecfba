#include "lambek/parser.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace lambek {

ParseTree ParseTree::leaf(const std::string& token) {
  ParseTree t;
  t.symbol = Symbol::terminal(token);
  t.yield = {token};
  return t;
}

ParseTree ParseTree::epsilon_leaf() {
  ParseTree t;
  t.symbol = Symbol::terminal("");
  t.epsilon = true;
  return t;
}

bool isomorphic(const ParseTree& a, const ParseTree& b) {
  if (a.epsilon != b.epsilon || a.symbol != b.symbol || a.children.size() != b.children.size())
    return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!isomorphic(a.children[i], b.children[i])) return false;
  return true;
}

namespace {

void render_into(const ParseTree& t, std::size_t depth, std::string& out) {
  out.append(depth * 2, ' ');
  out += t.epsilon ? std::string("·eps") : t.symbol.name;
  out += '\n';
  for (const auto& c : t.children) render_into(c, depth + 1, out);
}

}  // namespace

std::string render_tree(const ParseTree& t) {
  std::string out;
  render_into(t, 0, out);
  return out;
}

nlohmann::json tree_to_json(const ParseTree& t) {
  nlohmann::json j;
  if (t.epsilon) {
    j["sym"] = "·eps";
    j["eps"] = true;
  } else {
    j["sym"] = t.symbol.name;
  }
  j["prod_index"] = t.production >= 0 ? nlohmann::json(t.production) : nlohmann::json(nullptr);
  j["children"] = nlohmann::json::array();
  for (const auto& c : t.children) j["children"].push_back(tree_to_json(c));
  return j;
}

namespace {

// Derivation counts per (nonterminal, i, j), saturating at 2.
class SpanChart {
 public:
  struct Choice {
    int prod = -1;
    std::vector<int> cuts;  // rhs.size()+1 boundaries from i to j
    bool operator==(const Choice&) const = default;
  };

  SpanChart(const Grammar& g, const Word& w) : g_(g), w_(w), n_(static_cast<int>(w.size())) {
    for (const auto& a : g.nonterminals()) id_.emplace(a, static_cast<int>(id_.size()));
    std::size_t cells = id_.size() * (n_ + 1) * (n_ + 1);
    count_.assign(cells, 0);
    first_.assign(cells, Choice{});
    fill();
  }

  int count(const std::string& a, int i, int j) const { return count_[cell(id_.at(a), i, j)]; }

  ParseTree first_tree(const std::string& a, int i, int j) const {
    return build(a, i, j, first_[cell(id_.at(a), i, j)]);
  }

  std::optional<ParseTree> second_tree(const std::string& a, int i, int j) const {
    const Choice& c1 = first_[cell(id_.at(a), i, j)];
    std::optional<Choice> other;
    choices(a, i, j, [&](const Choice& c) {
      if (!(c == c1)) {
        other = c;
        return false;
      }
      return true;
    });
    if (other) return build(a, i, j, *other);
    // Only one choice: some nonterminal child must itself be ambiguous.
    const auto& rhs = g_.productions()[c1.prod].rhs;
    for (std::size_t k = 0; k < rhs.size(); ++k) {
      if (!rhs[k].is_nonterminal()) continue;
      if (count(rhs[k].name, c1.cuts[k], c1.cuts[k + 1]) < 2) continue;
      auto sub = second_tree(rhs[k].name, c1.cuts[k], c1.cuts[k + 1]);
      if (!sub) return std::nullopt;
      ParseTree t = build(a, i, j, c1);
      t.children[k] = std::move(*sub);
      return t;
    }
    return std::nullopt;
  }

 private:
  std::size_t cell(int a, int i, int j) const {
    return (static_cast<std::size_t>(a) * (n_ + 1) + i) * (n_ + 1) + j;
  }

  int child_count(const Symbol& s, int m, int e) const {
    if (s.is_terminal()) return (e == m + 1 && w_[m] == s.name) ? 1 : 0;
    return count_[cell(id_.at(s.name), m, e)];
  }

  // Enumerates (production, cuts) with a nonzero child product, in
  // production order then lexicographic cut order. f returns false to stop.
  void choices(const std::string& a, int i, int j,
               const std::function<bool(const Choice&)>& f) const {
    for (auto pi : g_.productions_for(a)) {
      const auto& rhs = g_.productions()[pi].rhs;
      Choice c{static_cast<int>(pi), {i}};
      bool stop = false;
      std::function<void(std::size_t, int)> go = [&](std::size_t k, int m) {
        if (stop) return;
        if (k == rhs.size()) {
          if (m == j && !f(c)) stop = true;
          return;
        }
        int lo = (k + 1 == rhs.size()) ? j : m;
        for (int e = std::max(lo, m); e <= j && !stop; ++e) {
          if (child_count(rhs[k], m, e) == 0) continue;
          c.cuts.push_back(e);
          go(k + 1, e);
          c.cuts.pop_back();
        }
      };
      go(0, i);
      if (stop) return;
    }
  }

  int product(const Choice& c) const {
    const auto& rhs = g_.productions()[c.prod].rhs;
    int p = 1;
    for (std::size_t k = 0; k < rhs.size(); ++k)
      p = std::min(2, p * child_count(rhs[k], c.cuts[k], c.cuts[k + 1]));
    return p;
  }

  void fill() {
    for (int len = 0; len <= n_; ++len) {
      for (int i = 0; i + len <= n_; ++i) {
        int j = i + len;
        bool changed = true;
        while (changed) {
          changed = false;
          for (const auto& [a, id] : id_) {
            int total = 0;
            std::optional<Choice> first;
            choices(a, i, j, [&](const Choice& c) {
              if (!first) first = c;
              total = std::min(2, total + product(c));
              return total < 2;
            });
            auto& slot = count_[cell(id, i, j)];
            if (total > slot) {
              if (slot == 0) first_[cell(id, i, j)] = *first;
              slot = static_cast<char>(total);
              changed = true;
            }
          }
        }
      }
    }
  }

  ParseTree build(const std::string& a, int i, int j, const Choice& c) const {
    ParseTree t;
    t.symbol = Symbol::nonterminal(a);
    t.production = c.prod;
    const auto& rhs = g_.productions()[c.prod].rhs;
    if (rhs.empty()) {
      t.children.push_back(ParseTree::epsilon_leaf());
    } else {
      for (std::size_t k = 0; k < rhs.size(); ++k) {
        if (rhs[k].is_terminal())
          t.children.push_back(ParseTree::leaf(rhs[k].name));
        else
          t.children.push_back(first_tree(rhs[k].name, c.cuts[k], c.cuts[k + 1]));
      }
    }
    t.yield.assign(w_.begin() + i, w_.begin() + j);
    return t;
  }

  const Grammar& g_;
  const Word& w_;
  int n_;
  std::map<std::string, int> id_;
  std::vector<char> count_;
  std::vector<Choice> first_;
};

}  // namespace

ParseResult parse_tree(const Grammar& g, const std::string& a, const Word& w) {
  if (!g.is_nonterminal(a)) throw GrammarError("unknown nonterminal '" + a + "'");
  for (const auto& t : w)
    if (!g.is_terminal(t)) return {};
  SpanChart chart(g, w);
  int n = static_cast<int>(w.size());
  int c = chart.count(a, 0, n);
  if (c == 0) return {};
  ParseResult r;
  r.trees.push_back(chart.first_tree(a, 0, n));
  if (c == 1) {
    r.kind = ParseResult::Kind::Unique;
    return r;
  }
  r.kind = ParseResult::Kind::Ambiguous;
  auto second = chart.second_tree(a, 0, n);
  if (second) r.trees.push_back(std::move(*second));
  return r;
}

std::optional<AmbiguityWitness> check_unambiguous(const Grammar& g, const std::string& a,
                                                  std::size_t max_len) {
  for (const auto& w : enumerate_words(g, Symbol::nonterminal(a), max_len)) {
    auto r = parse_tree(g, a, w);
    if (r.kind == ParseResult::Kind::Ambiguous && r.trees.size() == 2)
      return AmbiguityWitness{w, r.trees[0], r.trees[1]};
  }
  return std::nullopt;
}

std::pair<Grammar, HoleMark> extend_with_hole(const Grammar& g, const std::string& hole_type) {
  if (!g.is_nonterminal(hole_type))
    throw GrammarError("hole type '" + hole_type + "' is not a nonterminal");
  std::string token = "__HOLE";
  for (int k = 1; g.lookup(token); ++k) token = "__HOLE" + std::to_string(k);
  auto prods = g.productions();
  prods.push_back({hole_type, {Symbol::terminal(token)}});
  return {Grammar(g.start(), std::move(prods), g.extra_terminals()), HoleMark{hole_type, token}};
}

}  // namespace lambek
