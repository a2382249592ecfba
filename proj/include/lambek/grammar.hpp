#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lambek {

enum class SymbolKind { Terminal, Nonterminal };

struct Symbol {
  SymbolKind kind = SymbolKind::Terminal;
  std::string name;

  static Symbol terminal(std::string name) { return {SymbolKind::Terminal, std::move(name)}; }
  static Symbol nonterminal(std::string name) { return {SymbolKind::Nonterminal, std::move(name)}; }

  bool is_terminal() const { return kind == SymbolKind::Terminal; }
  bool is_nonterminal() const { return kind == SymbolKind::Nonterminal; }

  auto operator<=>(const Symbol&) const = default;
};

/// A word is a sequence of terminal tokens; the empty vector is epsilon.
using Word = std::vector<std::string>;

/// Shortest-first, then lexicographic. Every word set in the library uses it.
struct ShortLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using WordSet = std::set<Word, ShortLex>;

Word tokenize(std::string_view text);
std::string join(const Word& w);
Word concat(const Word& a, const Word& b);

struct Production {
  std::string lhs;
  std::vector<Symbol> rhs;

  bool is_epsilon() const { return rhs.empty(); }
  bool operator==(const Production&) const = default;
};

std::string to_string(const Production& p);

class GrammarError : public std::runtime_error {
 public:
  GrammarError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Context-free grammar (T, N, P, S). Immutable once constructed.
///
/// Nonterminals are exactly the left-hand sides. Terminals are every other
/// symbol appearing on a right-hand side plus any explicitly declared extras
/// (tokens that only occur in typing axioms, such as pronouns).
class Grammar {
 public:
  Grammar(std::string start, std::vector<Production> productions,
          std::set<std::string> extra_terminals = {});

  const std::string& start() const { return start_; }
  const std::vector<Production>& productions() const { return productions_; }
  const std::set<std::string>& terminals() const { return terminals_; }
  const std::set<std::string>& nonterminals() const { return nonterminals_; }
  const std::set<std::string>& extra_terminals() const { return extra_terminals_; }

  bool is_terminal(const std::string& name) const { return terminals_.count(name) != 0; }
  bool is_nonterminal(const std::string& name) const { return nonterminals_.count(name) != 0; }
  std::optional<Symbol> lookup(const std::string& name) const;

  /// Indices into productions() whose lhs is `lhs`, in declaration order.
  const std::vector<std::size_t>& productions_for(const std::string& lhs) const;

  /// Copy with extra productions appended (duplicates are skipped).
  Grammar with_productions(const std::vector<Production>& extra) const;

 private:
  std::string start_;
  std::vector<Production> productions_;
  std::set<std::string> terminals_;
  std::set<std::string> nonterminals_;
  std::set<std::string> extra_terminals_;
  std::map<std::string, std::vector<std::size_t>> by_lhs_;
};

/// Parses the line-oriented grammar format:
///
///   start E
///   E ::= C F ;
///   F ::= OR C F | ;        # empty alternative is epsilon
///   terminals he him       # optional, declares terminals used by no rule
///
/// The result is not validated.
Grammar parse_grammar(std::string_view text);
Grammar load_grammar_file(const std::string& path);

struct Diagnostic {
  std::string symbol;
  std::string message;
};

struct Validated {
  Grammar grammar;
  std::vector<Diagnostic> diagnostics;
};

/// Removes unproductive and unreachable nonterminals together with every
/// production mentioning them. Throws GrammarError when the start symbol
/// itself derives no word.
Validated validate(const Grammar& g);

std::set<std::string> nullable_set(const Grammar& g);

/// Minimum yield length of every nonterminal; unproductive ones are absent.
std::map<std::string, std::size_t> shortest_yields(const Grammar& g);

/// All words of length <= max_len derivable from x.
WordSet enumerate_words(const Grammar& g, const Symbol& x, std::size_t max_len);

}  // namespace lambek
