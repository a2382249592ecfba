#include "lambek/semantics.hpp"

#include <algorithm>
#include <functional>

namespace lambek {

std::size_t Semantics::MemberKeyHash::operator()(const MemberKey& k) const {
  std::size_t h = k.t.hash();
  for (const auto& tok : k.w) h = h * 1000003 ^ std::hash<std::string>{}(tok);
  return h ^ k.w.size();
}

Semantics::Semantics(const Grammar& g, SemBound b)
    : g_(g), max_len_(b.max_len), alphabet_(b.alphabet ? *b.alphabet : g.terminals()) {}

bool Semantics::recognize_atom(const std::string& nt, const Word& w) {
  auto& r = recognizers_[nt];
  if (!r) r = std::make_unique<EarleyRecognizer>(g_, nt);
  std::size_t fed = 0;
  bool ok = true;
  for (const auto& tok : w) {
    ++fed;
    if (!r->feed(tok)) {
      ok = false;
      break;
    }
  }
  ok = ok && r->accepted();
  while (fed--) r->unfeed();
  return ok;
}

bool Semantics::over_alphabet(const Word& w) const {
  for (const auto& t : w)
    if (!alphabet_.count(t)) return false;
  return true;
}

WordSet Semantics::all_words(std::size_t out_len) const {
  WordSet out{Word{}};
  std::vector<Word> frontier{Word{}};
  for (std::size_t len = 1; len <= out_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (const auto& t : alphabet_) {
        Word x = w;
        x.push_back(t);
        out.insert(x);
        next.push_back(std::move(x));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

bool Semantics::member(const Word& w, const Type& t) {
  MemberKey key{t, w};
  if (auto it = member_memo_.find(key); it != member_memo_.end()) return it->second;
  bool result = false;
  switch (t.kind()) {
    case Type::Kind::Atom:
      if (t.symbol().is_terminal())
        result = w.size() == 1 && w[0] == t.symbol().name;
      else
        result = g_.is_nonterminal(t.symbol().name) && recognize_atom(t.symbol().name, w);
      break;
    case Type::Kind::Unit:
      result = w.empty();
      break;
    case Type::Kind::Prod:
      for (std::size_t k = 0; k <= w.size() && !result; ++k) {
        Word a(w.begin(), w.begin() + k), b(w.begin() + k, w.end());
        result = member(a, t.left()) && member(b, t.right());
      }
      break;
    case Type::Kind::Under: {
      result = true;
      const WordSet& tests = denotation(t.arg(), max_len_);
      for (const auto& v : tests) {
        if (!member(concat(v, w), t.result())) {
          result = false;
          break;
        }
      }
      break;
    }
    case Type::Kind::Over: {
      result = true;
      const WordSet& tests = denotation(t.arg(), max_len_);
      for (const auto& v : tests) {
        if (!member(concat(w, v), t.result())) {
          result = false;
          break;
        }
      }
      break;
    }
  }
  member_memo_.emplace(std::move(key), result);
  return result;
}

const WordSet& Semantics::denotation(const Type& t, std::size_t out_len) {
  DenKey key{t, out_len};
  if (auto it = den_memo_.find(key); it != den_memo_.end()) return it->second;
  WordSet d = compute_denotation(t, out_len);
  return den_memo_.emplace(std::move(key), std::move(d)).first->second;
}

WordSet Semantics::compute_denotation(const Type& t, std::size_t out_len) {
  WordSet out;
  switch (t.kind()) {
    case Type::Kind::Unit:
      out.insert(Word{});
      return out;
    case Type::Kind::Atom: {
      const auto& s = t.symbol();
      if (s.is_terminal()) {
        if (out_len >= 1 && alphabet_.count(s.name)) out.insert(Word{s.name});
        return out;
      }
      for (auto& w : enumerate_words(g_, s, out_len))
        if (over_alphabet(w)) out.insert(w);
      return out;
    }
    case Type::Kind::Prod: {
      const WordSet& left = denotation(t.left(), out_len);
      for (const auto& x : left) {
        const WordSet& right = denotation(t.right(), out_len - x.size());
        for (const auto& y : right) out.insert(concat(x, y));
      }
      return out;
    }
    case Type::Kind::Under:
    case Type::Kind::Over: {
      const WordSet& tests = denotation(t.arg(), max_len_);
      if (tests.empty()) return all_words(out_len);
      // Every member w satisfies v0.w (or w.v0) in the result for the
      // shortest test word v0, so the candidates are quotients of the
      // result's bounded denotation.
      const Word& v0 = *tests.begin();
      const std::size_t k = v0.size();
      const WordSet& results = denotation(t.result(), out_len + k);
      const bool under = t.is(Type::Kind::Under);
      for (const auto& u : results) {
        if (u.size() < k) continue;
        Word w;
        if (under) {
          if (!std::equal(v0.begin(), v0.end(), u.begin())) continue;
          w.assign(u.begin() + k, u.end());
        } else {
          if (!std::equal(v0.begin(), v0.end(), u.end() - k)) continue;
          w.assign(u.begin(), u.end() - k);
        }
        if (member(w, t)) out.insert(std::move(w));
      }
      return out;
    }
  }
  return out;
}

WordSet Semantics::context_denotation(const TypeContext& ctx, std::size_t out_len) {
  WordSet cur{Word{}};
  for (const auto& item : ctx) {
    WordSet next;
    for (const auto& x : cur) {
      const WordSet& d = denotation(item, out_len - x.size());
      for (const auto& y : d) next.insert(concat(x, y));
    }
    cur = std::move(next);
    if (cur.empty()) break;
  }
  return cur;
}

std::optional<Word> Semantics::counterexample(const Sequent& s, std::size_t out_len) {
  for (const auto& w : context_denotation(s.antecedent, out_len))
    if (!member(w, s.succedent)) return w;
  return std::nullopt;
}

bool member_bounded(const Grammar& g, const Word& w, const Type& t, const SemBound& b) {
  return Semantics(g, b).member(w, t);
}

WordSet denotation_bounded(const Grammar& g, const Type& t, const SemBound& b,
                           std::size_t out_len) {
  return Semantics(g, b).denotation(t, out_len);
}

WordSet context_denotation_bounded(const Grammar& g, const TypeContext& ctx, const SemBound& b,
                                   std::size_t out_len) {
  return Semantics(g, b).context_denotation(ctx, out_len);
}

std::optional<Word> soundness_check(const Grammar& g, const Sequent& s, const SemBound& b,
                                    std::size_t out_len) {
  return Semantics(g, b).counterexample(s, out_len);
}

AxiomModel axiom_model(const Grammar& g, std::span<const Sequent> axioms, const SemBound& b,
                       std::size_t max_rounds) {
  AxiomModel m{g, {}, false};
  for (std::size_t round = 0; round < max_rounds; ++round) {
    Semantics sem(m.grammar, b);
    std::vector<Production> add;
    bool stuck = false;
    std::function<void(const Word&, const Type&)> force = [&](const Word& w, const Type& t) {
      if (sem.member(w, t)) return;
      switch (t.kind()) {
        case Type::Kind::Atom:
          if (t.symbol().is_terminal()) {
            stuck = true;
            return;
          } else {
            Production p{t.symbol().name, {}};
            for (const auto& tok : w) p.rhs.push_back(Symbol::terminal(tok));
            if (std::find(add.begin(), add.end(), p) == add.end()) add.push_back(std::move(p));
          }
          return;
        case Type::Kind::Under:
          for (const auto& v : sem.denotation(t.arg(), b.max_len)) force(concat(v, w), t.result());
          return;
        case Type::Kind::Over:
          for (const auto& v : sem.denotation(t.arg(), b.max_len)) force(concat(w, v), t.result());
          return;
        default:
          stuck = true;
      }
    };
    for (const auto& ax : axioms)
      for (const auto& w : sem.context_denotation(ax.antecedent, b.max_len)) force(w, ax.succedent);
    if (stuck) return m;
    if (add.empty()) {
      m.closed = true;
      return m;
    }
    m.grammar = m.grammar.with_productions(add);
    m.added.insert(m.added.end(), add.begin(), add.end());
  }
  return m;
}

}  // namespace lambek
