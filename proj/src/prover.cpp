#include "lambek/prover.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "lambek/earley.hpp"
#include "lambek/semantics.hpp"

namespace lambek {

namespace {

struct Key {
  Sequent s;
  std::size_t budget;
  bool under_cut;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    return (SequentHash{}(k.s) * 31 + k.budget) * 2 + k.under_cut;
  }
};

struct Res {
  std::optional<ProofTree> proof;
  bool depth_cut = false;
  bool cycle_cut = false;

  void absorb(const Res& other) {
    depth_cut |= other.depth_cut;
    cycle_cut |= other.cycle_cut;
  }
};

TypeContext slice(const TypeContext& c, std::size_t b, std::size_t e) {
  return TypeContext(c.begin() + b, c.begin() + e);
}

TypeContext splice(const TypeContext& c, std::size_t b, std::size_t e,
                   const TypeContext& middle) {
  TypeContext out(c.begin(), c.begin() + b);
  out.insert(out.end(), middle.begin(), middle.end());
  out.insert(out.end(), c.begin() + e, c.end());
  return out;
}

class Search {
 public:
  Search(const Grammar& g, const SearchConfig& cfg, std::span<const Sequent> axioms)
      : g_(g), cfg_(cfg), axioms_(axioms) {
    for (std::size_t i = 0; i < g.productions().size(); ++i) rhs_.push_back(rhs_context(g.productions()[i]));
    rank_nullables();
    if (cfg.enable_general_cut) cut_formulas_ = type_universe(nonterminal_atoms(g), cfg.cut_formula_depth);
    if (axioms.empty() && !cfg.enable_general_cut) {
      std::vector<Production> marks;
      for (const auto& a : g.nonterminals()) marks.push_back({a, {Symbol::terminal(mark(a))}});
      sentential_.emplace(g.with_productions(marks));
    }
  }

  Res solve(const Sequent& s, std::size_t budget, std::size_t depth) {
    Key key{s, budget, under_cut_};
    if (auto it = proved_.find(key); it != proved_.end()) return Res{it->second};
    if (auto it = failed_.find(key); it != failed_.end()) {
      if (it->second == kExact) return {};
      if (it->second >= depth) return Res{std::nullopt, true, false};
    }
    if (depth == 0 || nodes_ >= cfg_.max_nodes) {
      if (nodes_ >= cfg_.max_nodes) cap_hit_ = true;
      return Res{std::nullopt, true, false};
    }
    if (on_path_.count(key)) return Res{std::nullopt, false, true};
    ++nodes_;
    on_path_.insert(key);
    Res r = expand(s, budget, depth - 1);
    on_path_.erase(key);
    if (r.proof) {
      proved_.emplace(key, *r.proof);
    } else if (!r.cycle_cut) {
      auto& slot = failed_[key];
      slot = r.depth_cut ? std::max(slot, depth) : kExact;
    }
    return r;
  }

  std::size_t nodes() const { return nodes_; }
  bool cap_hit() const { return cap_hit_; }

 private:
  static constexpr std::size_t kExact = std::numeric_limits<std::size_t>::max();

  // Nullable nonterminals by the round in which they became nullable, each
  // with a production that erases it using only lower-ranked symbols.
  void rank_nullables() {
    bool grew = true;
    while (grew) {
      grew = false;
      std::map<std::string, std::size_t> found;
      for (std::size_t i = 0; i < g_.productions().size(); ++i) {
        const auto& p = g_.productions()[i];
        if (eraser_.count(p.lhs) || found.count(p.lhs)) continue;
        bool ok = std::all_of(p.rhs.begin(), p.rhs.end(), [&](const Symbol& s) {
          return s.is_nonterminal() && eraser_.count(s.name);
        });
        if (ok) found.emplace(p.lhs, i);
      }
      for (auto& [a, i] : found) {
        eraser_.emplace(a, i);
        nullable_order_.push_back(a);
        grew = true;
      }
    }
    std::sort(nullable_order_.begin(), nullable_order_.end());
  }

  bool nullable(const Symbol& s) const { return s.is_nonterminal() && eraser_.count(s.name); }

  static std::string mark(const std::string& nt) { return "\x01" + nt; }

  // With only atoms on both sides no logical rule applies, so the sequent is
  // provable iff the goal derives the antecedent read as a sentential form.
  // Nonterminals in the antecedent are matched through marker terminals.
  bool derives_sentential(const std::string& goal, const TypeContext& gamma) {
    auto& rec = recognizers_[goal];
    if (!rec) rec = std::make_unique<EarleyRecognizer>(*sentential_, goal);
    std::size_t fed = 0;
    bool alive = true;
    for (const auto& t : gamma) {
      const auto& sym = t.symbol();
      alive = rec->feed(sym.is_terminal() ? sym.name : mark(sym.name));
      ++fed;
      if (!alive) break;
    }
    bool ok = alive && rec->accepted();
    while (fed-- > 0) rec->unfeed();
    return ok;
  }

  // Removes the nullable nonterminal at position k of t's antecedent by
  // contracting against its erasing productions.
  ProofTree erase(ProofTree t, std::size_t k) const {
    const auto& x = t.conclusion.antecedent[k].symbol().name;
    std::size_t pi = eraser_.at(x);
    const auto& alpha = rhs_[pi];
    Sequent c{splice(t.conclusion.antecedent, k, k + 1, alpha), t.conclusion.succedent};
    ProofTree out{std::move(c), Rule::CONTRACT, RuleDetail{static_cast<int>(pi), -1, static_cast<int>(k)},
                  {std::move(t)}};
    for (std::size_t r = alpha.size(); r-- > 0;) out = erase(std::move(out), k + r);
    return out;
  }

  Res expand(const Sequent& s, std::size_t budget, std::size_t depth) {
    const auto& gamma = s.antecedent;
    const auto& goal = s.succedent;
    const std::size_t n = gamma.size();

    // Leaves.
    if (n == 1 && gamma[0] == goal) return Res{axiom_leaf(goal)};
    if (n == 0 && goal.is(Type::Kind::Unit)) return Res{ProofTree{s, Rule::EPS_R, {}, {}}};
    if (goal.is(Type::Kind::Atom) && goal.symbol().is_nonterminal()) {
      for (auto pi : g_.productions_for(goal.symbol().name))
        if (rhs_[pi] == gamma) return Res{gram_leaf(g_, pi)};
    }
    for (std::size_t a = 0; a < axioms_.size(); ++a)
      if (axioms_[a] == s)
        return Res{ProofTree{s, Rule::HYP, RuleDetail{-1, static_cast<int>(a), -1}, {}}};

    if (sentential_ && goal.is(Type::Kind::Atom) &&
        std::all_of(gamma.begin(), gamma.end(), [](const Type& t) { return t.is(Type::Kind::Atom); })) {
      if (goal.symbol().is_terminal()) return {};
      if (!derives_sentential(goal.symbol().name, gamma)) return {};
    }

    // Invertible steps, committed to.
    for (std::size_t k = 0; k < n; ++k) {
      if (gamma[k].is(Type::Kind::Unit)) {
        Sequent p{splice(gamma, k, k + 1, {}), goal};
        Res r = solve(p, budget, depth);
        if (r.proof) r.proof = ProofTree{s, Rule::EPS_L, RuleDetail{-1, -1, static_cast<int>(k)}, {*r.proof}};
        return r;
      }
      if (gamma[k].is(Type::Kind::Prod)) {
        Sequent p{splice(gamma, k, k + 1, {gamma[k].left(), gamma[k].right()}), goal};
        Res r = solve(p, budget, depth);
        if (r.proof) r.proof = ProofTree{s, Rule::PROD_L, RuleDetail{-1, -1, static_cast<int>(k)}, {*r.proof}};
        return r;
      }
    }
    if (goal.is(Type::Kind::Under)) {
      TypeContext ctx{goal.arg()};
      ctx.insert(ctx.end(), gamma.begin(), gamma.end());
      Res r = solve(Sequent{std::move(ctx), goal.result()}, budget, depth);
      if (r.proof) r.proof = ProofTree{s, Rule::UNDER_R, {}, {*r.proof}};
      return r;
    }
    if (goal.is(Type::Kind::Over)) {
      TypeContext ctx = gamma;
      ctx.push_back(goal.arg());
      Res r = solve(Sequent{std::move(ctx), goal.result()}, budget, depth);
      if (r.proof) r.proof = ProofTree{s, Rule::OVER_R, {}, {*r.proof}};
      return r;
    }

    Res acc;
    // Two-premise helper: the left premise is tried first.
    auto two = [&](const Sequent& left, const Sequent& right, Rule rule, int index) -> bool {
      Res l = solve(left, budget, depth);
      acc.absorb(l);
      if (!l.proof) return false;
      Res r = solve(right, budget, depth);
      acc.absorb(r);
      if (!r.proof) return false;
      acc.proof = ProofTree{s, rule, RuleDetail{-1, -1, index}, {std::move(*l.proof), std::move(*r.proof)}};
      return true;
    };

    // Left implication rules.
    for (std::size_t k = 0; k < n; ++k) {
      const auto& f = gamma[k];
      if (f.is(Type::Kind::Under)) {
        for (std::size_t j = k + 1; j-- > 0;) {
          Sequent left{slice(gamma, j, k), f.arg()};
          Sequent right{splice(gamma, j, k + 1, {f.result()}), goal};
          if (two(left, right, Rule::UNDER_L, static_cast<int>(k))) return acc;
        }
      } else if (f.is(Type::Kind::Over)) {
        for (std::size_t m = k + 1; m <= n; ++m) {
          Sequent left{slice(gamma, k + 1, m), f.arg()};
          Sequent right{splice(gamma, k, m, {f.result()}), goal};
          if (two(left, right, Rule::OVER_L, static_cast<int>(k))) return acc;
        }
      }
    }

    if (goal.is(Type::Kind::Prod)) {
      for (std::size_t sp = 0; sp <= n; ++sp) {
        Sequent left{slice(gamma, 0, sp), goal.left()};
        Sequent right{slice(gamma, sp, n), goal.right()};
        if (two(left, right, Rule::PROD_R, -1)) {
          acc.proof->detail = {};
          return acc;
        }
      }
    }

    // Production folds.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t pi = 0; pi < rhs_.size(); ++pi) {
        const auto& rhs = g_.productions()[pi].rhs;
        std::vector<std::size_t> elided;
        bool done = false;
        // r: rhs position, pos: antecedent position
        auto match = [&](auto&& self, std::size_t r, std::size_t pos) -> void {
          if (done) return;
          if (r == rhs.size()) {
            if (pos == i) return;
            if (fold(s, i, pos, pi, elided, budget, depth, acc)) done = true;
            return;
          }
          if (pos < n && gamma[pos] == rhs_[pi][r]) self(self, r + 1, pos + 1);
          if (nullable(rhs[r])) {
            elided.push_back(r);
            self(self, r + 1, pos);
            elided.pop_back();
          }
        };
        match(match, 0, i);
        if (done) return acc;
      }
    }

    // Extra axioms used as cuts.
    for (std::size_t a = 0; a < axioms_.size(); ++a) {
      const auto& ax = axioms_[a];
      const std::size_t w = ax.antecedent.size();
      if (w == 0 || w > n) continue;
      for (std::size_t i = 0; i + w <= n; ++i) {
        if (!std::equal(ax.antecedent.begin(), ax.antecedent.end(), gamma.begin() + i)) continue;
        Sequent p{splice(gamma, i, i + w, {ax.succedent}), goal};
        Res r = solve(p, budget, depth);
        acc.absorb(r);
        if (r.proof) {
          acc.proof = ProofTree{s, Rule::CONTRACT, RuleDetail{-1, static_cast<int>(a), static_cast<int>(i)},
                                {std::move(*r.proof)}};
          return acc;
        }
      }
    }

    // Bare nullable insertions.
    if (budget > 0) {
      for (std::size_t k = 0; k <= n; ++k) {
        for (const auto& x : nullable_order_) {
          Sequent p{splice(gamma, k, k, {Type::atom(Symbol::nonterminal(x))}), goal};
          Res r = solve(p, budget - 1, depth);
          acc.absorb(r);
          if (r.proof) {
            acc.proof = erase(std::move(*r.proof), k);
            return acc;
          }
        }
      }
    }

    // At most one general cut per branch; its premises are searched cut-free.
    if (cfg_.enable_general_cut && !under_cut_) {
      under_cut_ = true;
      bool found = false;
      for (std::size_t i = 0; i <= n && !found; ++i) {
        for (std::size_t j = i; j <= n && !found; ++j) {
          for (const auto& tau : cut_formulas_) {
            if (j == i + 1 && gamma[i] == tau) continue;
            Sequent left{slice(gamma, i, j), tau};
            Sequent right{splice(gamma, i, j, {tau}), goal};
            if (right == s) continue;
            if (two(left, right, Rule::CUT, static_cast<int>(i))) {
              found = true;
              break;
            }
          }
        }
      }
      under_cut_ = false;
    }
    return acc;
  }

  // Backward step: the antecedent segment [i, end) is the production's rhs
  // with the listed rhs positions missing. Forward, the proof contracts the
  // full rhs and then erases the missing nullable symbols right to left.
  bool fold(const Sequent& s, std::size_t i, std::size_t end, std::size_t pi,
            const std::vector<std::size_t>& elided, std::size_t budget, std::size_t depth,
            Res& acc) {
    Type lhs = Type::atom(Symbol::nonterminal(g_.productions()[pi].lhs));
    Sequent p{splice(s.antecedent, i, end, {lhs}), s.succedent};
    Res r = solve(p, budget, depth);
    acc.absorb(r);
    if (!r.proof) return false;
    const auto& alpha = rhs_[pi];
    ProofTree t{Sequent{splice(p.antecedent, i, i + 1, alpha), s.succedent}, Rule::CONTRACT,
                RuleDetail{static_cast<int>(pi), -1, static_cast<int>(i)}, {std::move(*r.proof)}};
    for (auto it = elided.rbegin(); it != elided.rend(); ++it) t = erase(std::move(t), i + *it);
    acc.proof = std::move(t);
    return true;
  }

  const Grammar& g_;
  const SearchConfig& cfg_;
  std::span<const Sequent> axioms_;
  std::vector<TypeContext> rhs_;
  std::map<std::string, std::size_t> eraser_;
  std::vector<std::string> nullable_order_;
  std::vector<Type> cut_formulas_;
  std::optional<Grammar> sentential_;
  std::map<std::string, std::unique_ptr<EarleyRecognizer>> recognizers_;

  std::unordered_map<Key, ProofTree, KeyHash> proved_;
  std::unordered_map<Key, std::size_t, KeyHash> failed_;
  std::unordered_set<Key, KeyHash> on_path_;
  std::size_t nodes_ = 0;
  bool cap_hit_ = false;
  bool under_cut_ = false;
};

}  // namespace

std::string_view outcome_name(SearchResult::Outcome o) {
  switch (o) {
    case SearchResult::Outcome::Proved:
      return "Proved";
    case SearchResult::Outcome::NotFoundWithinBounds:
      return "NotFoundWithinBounds";
    case SearchResult::Outcome::RefutedByOracle:
      return "RefutedByOracle";
  }
  return "?";
}

SearchResult prove(const Grammar& g, const Sequent& s, const SearchConfig& cfg,
                   std::span<const Sequent> axioms) {
  SearchResult out;
  if (cfg.oracle_prescreen) {
    SemBound b{cfg.oracle_len, std::nullopt};
    std::optional<Word> cex;
    if (axioms.empty()) {
      cex = soundness_check(g, s, b, cfg.oracle_len);
    } else {
      auto model = axiom_model(g, axioms, b);
      cex = soundness_check(model.grammar, s, b, cfg.oracle_len);
    }
    if (cex) {
      out.outcome = SearchResult::Outcome::RefutedByOracle;
      out.counterexample = std::move(cex);
      return out;
    }
  }
  Search search(g, cfg, axioms);
  Res r = search.solve(s, cfg.insert_budget, cfg.max_depth);
  out.nodes = search.nodes();
  out.node_cap_hit = search.cap_hit();
  if (r.proof) {
    out.outcome = SearchResult::Outcome::Proved;
    out.proof = std::move(r.proof);
  }
  return out;
}

}  // namespace lambek
