#include "lambek/earley.hpp"

namespace lambek {

namespace {

std::uint64_t key(int prod, int dot, int origin) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(prod + 1)) << 40) ^
         (static_cast<std::uint64_t>(dot) << 24) ^ static_cast<std::uint64_t>(origin);
}

}  // namespace

EarleyRecognizer::EarleyRecognizer(const Grammar& g, const std::string& goal) {
  for (const auto& a : g.nonterminals()) nt_id_.emplace(a, static_cast<int>(nt_id_.size()));
  for (const auto& t : g.terminals()) t_id_.emplace(t, static_cast<int>(t_id_.size()));
  by_lhs_.resize(nt_id_.size());
  for (const auto& p : g.productions()) {
    std::vector<int> rhs;
    for (const auto& s : p.rhs)
      rhs.push_back(s.is_nonterminal() ? nt_id_.at(s.name) + 1 : -(t_id_.at(s.name) + 1));
    by_lhs_[nt_id_.at(p.lhs)].push_back(static_cast<int>(rhs_.size()));
    lhs_.push_back(nt_id_.at(p.lhs));
    rhs_.push_back(std::move(rhs));
  }
  nullable_.assign(nt_id_.size(), 0);
  for (const auto& a : nullable_set(g)) nullable_[nt_id_.at(a)] = 1;

  auto it = nt_id_.find(goal);
  if (it == nt_id_.end()) throw GrammarError("unknown nonterminal '" + goal + "'");
  goal_ = it->second;
  sets_.emplace_back();
  add(sets_[0], {-1, 0, 0});
  close(0);
}

int EarleyRecognizer::rhs_size(int prod) const {
  return prod < 0 ? 1 : static_cast<int>(rhs_[prod].size());
}

int EarleyRecognizer::symbol_at(int prod, int dot) const {
  if (dot >= rhs_size(prod)) return 0;
  return prod < 0 ? goal_ + 1 : rhs_[prod][dot];
}

void EarleyRecognizer::add(Set& s, Item it) {
  if (s.seen.insert(key(it.prod, it.dot, it.origin)).second) s.items.push_back(it);
}

void EarleyRecognizer::close(std::size_t k) {
  auto& set = sets_[k];
  for (std::size_t i = 0; i < set.items.size(); ++i) {
    Item it = set.items[i];
    int next = symbol_at(it.prod, it.dot);
    if (next > 0) {
      int b = next - 1;
      for (int q : by_lhs_[b]) add(set, {q, 0, static_cast<int>(k)});
      if (nullable_[b]) add(set, {it.prod, it.dot + 1, it.origin});
    } else if (next == 0 && it.prod >= 0) {
      int a = lhs_[it.prod];
      // Completion; the origin set may be this one, whose vector can grow.
      auto& origin = sets_[it.origin];
      for (std::size_t j = 0; j < origin.items.size(); ++j) {
        Item w = origin.items[j];
        if (symbol_at(w.prod, w.dot) == a + 1) add(set, {w.prod, w.dot + 1, w.origin});
      }
    }
  }
}

bool EarleyRecognizer::feed(const std::string& token) {
  std::size_t k = sets_.size();
  sets_.emplace_back();
  auto t = t_id_.find(token);
  if (t != t_id_.end()) {
    int code = -(t->second + 1);
    const auto& prev = sets_[k - 1].items;
    for (const auto& it : prev)
      if (symbol_at(it.prod, it.dot) == code) add(sets_[k], {it.prod, it.dot + 1, it.origin});
    close(k);
  }
  return alive();
}

bool EarleyRecognizer::feed(const Word& w) {
  for (const auto& t : w) feed(t);
  return alive();
}

void EarleyRecognizer::unfeed() {
  if (sets_.size() > 1) sets_.pop_back();
}

bool EarleyRecognizer::accepted() const {
  return sets_.back().seen.count(key(-1, 1, 0)) != 0;
}

bool recognize(const Grammar& g, const std::string& nonterminal, const Word& w) {
  EarleyRecognizer r(g, nonterminal);
  for (const auto& t : w)
    if (!r.feed(t)) return false;
  return r.accepted();
}

}  // namespace lambek
