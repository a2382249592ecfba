#include "lambek/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace lambek {

Word tokenize(std::string_view text) {
  Word out;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string join(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += w[i];
  }
  return s;
}

Word concat(const Word& a, const Word& b) {
  Word r;
  r.reserve(a.size() + b.size());
  r.insert(r.end(), a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

std::string to_string(const Production& p) {
  std::string s = p.lhs + " ::=";
  if (p.rhs.empty()) return s + " ε";
  for (const auto& sym : p.rhs) s += " " + sym.name;
  return s;
}

Grammar::Grammar(std::string start, std::vector<Production> productions,
                 std::set<std::string> extra_terminals)
    : start_(std::move(start)),
      productions_(std::move(productions)),
      extra_terminals_(std::move(extra_terminals)) {
  for (std::size_t i = 0; i < productions_.size(); ++i) {
    nonterminals_.insert(productions_[i].lhs);
    by_lhs_[productions_[i].lhs].push_back(i);
  }
  if (!nonterminals_.count(start_))
    throw GrammarError("start symbol '" + start_ + "' has no productions");
  for (std::size_t i = 0; i < productions_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (productions_[i] == productions_[j])
        throw GrammarError("duplicate production " + to_string(productions_[i]));
    for (const auto& sym : productions_[i].rhs) {
      if (sym.name.empty()) throw GrammarError("empty symbol name");
      if (sym.is_nonterminal()) {
        if (!nonterminals_.count(sym.name))
          throw GrammarError("undeclared nonterminal '" + sym.name + "'");
      } else {
        if (nonterminals_.count(sym.name))
          throw GrammarError("'" + sym.name + "' used as both terminal and nonterminal");
        terminals_.insert(sym.name);
      }
    }
  }
  for (const auto& t : extra_terminals_) {
    if (nonterminals_.count(t))
      throw GrammarError("'" + t + "' used as both terminal and nonterminal");
    terminals_.insert(t);
  }
}

std::optional<Symbol> Grammar::lookup(const std::string& name) const {
  if (nonterminals_.count(name)) return Symbol::nonterminal(name);
  if (terminals_.count(name)) return Symbol::terminal(name);
  return std::nullopt;
}

const std::vector<std::size_t>& Grammar::productions_for(const std::string& lhs) const {
  static const std::vector<std::size_t> none;
  auto it = by_lhs_.find(lhs);
  return it == by_lhs_.end() ? none : it->second;
}

Grammar Grammar::with_productions(const std::vector<Production>& extra) const {
  auto prods = productions_;
  for (const auto& p : extra)
    if (std::find(prods.begin(), prods.end(), p) == prods.end()) prods.push_back(p);
  return Grammar(start_, std::move(prods), extra_terminals_);
}

namespace {

struct Lexeme {
  std::string text;
  bool quoted = false;
};

struct Line {
  std::size_t number;
  std::vector<Lexeme> lexemes;
};

std::vector<Lexeme> lex_line(std::string_view line, std::size_t number) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      break;
    } else if (c == '"') {
      auto end = line.find('"', i + 1);
      if (end == std::string_view::npos) throw GrammarError("unterminated quoted terminal", number);
      if (end == i + 1) throw GrammarError("empty quoted terminal", number);
      auto text = std::string(line.substr(i + 1, end - i - 1));
      if (std::any_of(text.begin(), text.end(),
                      [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); }))
        throw GrammarError("whitespace inside quoted terminal", number);
      out.push_back({std::move(text), true});
      i = end + 1;
    } else if (c == '|' || c == ';') {
      out.push_back({std::string(1, c), false});
      ++i;
    } else {
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
             line[j] != '|' && line[j] != ';' && line[j] != '"' && line[j] != '#')
        ++j;
      out.push_back({std::string(line.substr(i, j - i)), false});
      i = j;
    }
  }
  return out;
}

bool is_rule(const Line& l) {
  return l.lexemes.size() >= 2 && !l.lexemes[1].quoted && l.lexemes[1].text == "::=";
}

bool is_keyword(const Lexeme& x, std::string_view kw) { return !x.quoted && x.text == kw; }

}  // namespace

Grammar parse_grammar(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++number;
    auto lex = lex_line(raw, number);
    if (!lex.empty()) lines.push_back({number, std::move(lex)});
  }
  if (lines.empty()) throw GrammarError("empty grammar file");

  std::optional<std::string> start;
  std::set<std::string> lhs_names;
  std::set<std::string> extras;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto& l = lines[k];
    if (is_rule(l)) {
      if (l.lexemes[0].quoted) throw GrammarError("rule left-hand side must not be quoted", l.number);
      lhs_names.insert(l.lexemes[0].text);
      continue;
    }
    if (is_keyword(l.lexemes[0], "start")) {
      if (start) throw GrammarError("duplicate start directive", l.number);
      if (k != 0) throw GrammarError("start directive must be the first line", l.number);
      if (l.lexemes.size() != 2 || l.lexemes[1].quoted)
        throw GrammarError("expected 'start <Name>'", l.number);
      start = l.lexemes[1].text;
      continue;
    }
    if (is_keyword(l.lexemes[0], "terminals")) {
      for (std::size_t i = 1; i < l.lexemes.size(); ++i) {
        const auto& x = l.lexemes[i];
        if (!x.quoted && (x.text == "|" || x.text == ";"))
          throw GrammarError("unexpected '" + x.text + "' in terminals directive", l.number);
        extras.insert(x.text);
      }
      continue;
    }
    throw GrammarError("expected a rule '<NT> ::= ... ;'", l.number);
  }
  if (!start) throw GrammarError("missing start directive", lines.front().number);

  std::vector<Production> prods;
  for (const auto& l : lines) {
    if (!is_rule(l)) continue;
    const auto& lex = l.lexemes;
    if (!is_keyword(lex.back(), ";")) throw GrammarError("rule must end with ';'", l.number);
    std::vector<Symbol> rhs;
    auto flush = [&] {
      Production p{lex[0].text, rhs};
      if (std::find(prods.begin(), prods.end(), p) != prods.end())
        throw GrammarError("duplicate production " + to_string(p), l.number);
      prods.push_back(std::move(p));
      rhs.clear();
    };
    for (std::size_t i = 2; i + 1 < lex.size(); ++i) {
      const auto& x = lex[i];
      if (is_keyword(x, "|")) {
        flush();
      } else if (is_keyword(x, ";") || is_keyword(x, "::=")) {
        throw GrammarError("unexpected '" + x.text + "'", l.number);
      } else if (x.quoted) {
        if (lhs_names.count(x.text))
          throw GrammarError("quoted terminal '" + x.text + "' clashes with a nonterminal",
                             l.number);
        rhs.push_back(Symbol::terminal(x.text));
      } else if (lhs_names.count(x.text)) {
        rhs.push_back(Symbol::nonterminal(x.text));
      } else {
        rhs.push_back(Symbol::terminal(x.text));
      }
    }
    flush();
  }
  if (!lhs_names.count(*start))
    throw GrammarError("undeclared start symbol '" + *start + "'", lines.front().number);
  for (const auto& e : extras)
    if (lhs_names.count(e)) throw GrammarError("declared terminal '" + e + "' has rules");
  return Grammar(*start, std::move(prods), std::move(extras));
}

Grammar load_grammar_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GrammarError("cannot open grammar file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_grammar(ss.str());
}

std::map<std::string, std::size_t> shortest_yields(const Grammar& g) {
  std::map<std::string, std::size_t> best;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions()) {
      std::size_t len = 0;
      bool ok = true;
      for (const auto& s : p.rhs) {
        if (s.is_terminal()) {
          ++len;
        } else if (auto it = best.find(s.name); it != best.end()) {
          len += it->second;
        } else {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      auto it = best.find(p.lhs);
      if (it == best.end() || len < it->second) {
        best[p.lhs] = len;
        changed = true;
      }
    }
  }
  return best;
}

Validated validate(const Grammar& g) {
  auto productive = shortest_yields(g);
  if (!productive.count(g.start()))
    throw GrammarError("start symbol '" + g.start() + "' derives no word");

  auto all_productive = [&](const Production& p) {
    return std::all_of(p.rhs.begin(), p.rhs.end(), [&](const Symbol& s) {
      return s.is_terminal() || productive.count(s.name);
    });
  };

  std::set<std::string> reachable{g.start()};
  std::vector<std::string> work{g.start()};
  while (!work.empty()) {
    auto a = work.back();
    work.pop_back();
    for (auto i : g.productions_for(a)) {
      const auto& p = g.productions()[i];
      if (!all_productive(p)) continue;
      for (const auto& s : p.rhs)
        if (s.is_nonterminal() && reachable.insert(s.name).second) work.push_back(s.name);
    }
  }

  std::vector<Diagnostic> diags;
  for (const auto& a : g.nonterminals()) {
    std::size_t dropped = g.productions_for(a).size();
    std::string n = std::to_string(dropped) + " production" + (dropped == 1 ? "" : "s");
    if (!productive.count(a))
      diags.push_back({a, "nonterminal '" + a + "' derives no word; removed " + n});
    else if (!reachable.count(a))
      diags.push_back({a, "nonterminal '" + a + "' is unreachable from '" + g.start() +
                              "'; removed " + n});
  }
  if (diags.empty()) return {g, {}};

  std::vector<Production> kept;
  for (const auto& p : g.productions()) {
    if (!productive.count(p.lhs) || !reachable.count(p.lhs) || !all_productive(p)) continue;
    kept.push_back(p);
  }
  return {Grammar(g.start(), std::move(kept), g.extra_terminals()), std::move(diags)};
}

std::set<std::string> nullable_set(const Grammar& g) {
  std::set<std::string> out;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions()) {
      if (out.count(p.lhs)) continue;
      bool all = std::all_of(p.rhs.begin(), p.rhs.end(), [&](const Symbol& s) {
        return s.is_nonterminal() && out.count(s.name);
      });
      if (all) {
        out.insert(p.lhs);
        changed = true;
      }
    }
  }
  return out;
}

WordSet enumerate_words(const Grammar& g, const Symbol& x, std::size_t max_len) {
  if (x.is_terminal()) {
    if (max_len >= 1) return WordSet{Word{x.name}};
    return {};
  }
  // Least fixpoint of the length-bounded language equations. Shortest yields
  // prune partial concatenations that cannot fit the remaining budget.
  auto shortest = shortest_yields(g);
  auto min_len = [&](const Symbol& s) -> std::size_t {
    if (s.is_terminal()) return 1;
    auto it = shortest.find(s.name);
    return it == shortest.end() ? max_len + 1 : it->second;
  };
  std::map<std::string, WordSet> lang;
  for (const auto& a : g.nonterminals()) lang[a];

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions()) {
      std::vector<std::size_t> tail(p.rhs.size() + 1, 0);
      for (std::size_t i = p.rhs.size(); i-- > 0;) tail[i] = tail[i + 1] + min_len(p.rhs[i]);
      if (tail[0] > max_len) continue;
      std::vector<Word> cur{Word{}};
      for (std::size_t i = 0; i < p.rhs.size() && !cur.empty(); ++i) {
        const auto& s = p.rhs[i];
        std::size_t room = max_len - tail[i + 1];
        std::vector<Word> next;
        for (const auto& u : cur) {
          if (s.is_terminal()) {
            if (u.size() + 1 <= room) {
              auto v = u;
              v.push_back(s.name);
              next.push_back(std::move(v));
            }
          } else {
            for (const auto& w : lang[s.name]) {
              if (u.size() + w.size() > room) break;  // ShortLex: sizes ascend
              next.push_back(concat(u, w));
            }
          }
        }
        cur = std::move(next);
      }
      auto& target = lang[p.lhs];
      for (auto& w : cur)
        if (target.insert(std::move(w)).second) changed = true;
    }
  }
  return lang[x.name];
}

}  // namespace lambek
