#include "lambek/types.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_set>

namespace lambek {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

bool reserved(char c) {
  return c == '\\' || c == '/' || c == '*' || c == '(' || c == ')' || c == '"' || c == ',' ||
         std::isspace(static_cast<unsigned char>(c));
}

bool needs_quotes(const std::string& name) {
  if (name.empty() || name == "1") return true;
  if (name.find("|-") != std::string::npos) return true;
  return std::any_of(name.begin(), name.end(), reserved);
}

std::string quote_if_needed(const std::string& name) {
  return needs_quotes(name) ? "\"" + name + "\"" : name;
}

}  // namespace

Type Type::make(Kind k, Symbol s, std::vector<Type> kids) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->symbol = std::move(s);
  n->kids = std::move(kids);
  std::size_t h = mix(static_cast<std::size_t>(k) + 1, std::hash<std::string>{}(n->symbol.name));
  for (const auto& c : n->kids) {
    n->size += c.size();
    n->depth = std::max(n->depth, c.depth() + 1);
    h = mix(h, c.hash());
  }
  n->hash = h;
  return Type(std::move(n));
}

Type Type::atom(Symbol s) { return make(Kind::Atom, std::move(s), {}); }
Type Type::under(Type arg, Type result) {
  return make(Kind::Under, {}, {std::move(arg), std::move(result)});
}
Type Type::over(Type result, Type arg) {
  return make(Kind::Over, {}, {std::move(result), std::move(arg)});
}
Type Type::prod(Type left, Type right) {
  return make(Kind::Prod, {}, {std::move(left), std::move(right)});
}
Type Type::unit() {
  static const Type u = make(Kind::Unit, {}, {});
  return u;
}

const Symbol& Type::symbol() const {
  if (!is(Kind::Atom)) throw std::logic_error("symbol() on a non-atomic type");
  return node_->symbol;
}

const Type& Type::arg() const {
  if (is(Kind::Under)) return node_->kids[0];
  if (is(Kind::Over)) return node_->kids[1];
  throw std::logic_error("arg() on a non-implication");
}

const Type& Type::result() const {
  if (is(Kind::Under)) return node_->kids[1];
  if (is(Kind::Over)) return node_->kids[0];
  throw std::logic_error("result() on a non-implication");
}

const Type& Type::left() const {
  if (!is(Kind::Prod)) throw std::logic_error("left() on a non-product");
  return node_->kids[0];
}

const Type& Type::right() const {
  if (!is(Kind::Prod)) throw std::logic_error("right() on a non-product");
  return node_->kids[1];
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
  if (a.node_->symbol != b.node_->symbol) return false;
  for (std::size_t i = 0; i < a.node_->kids.size(); ++i)
    if (!(a.node_->kids[i] == b.node_->kids[i])) return false;
  return true;
}

std::string render(const Type& t) {
  auto operand = [](const Type& x) {
    return x.is_implication() ? "(" + render(x) + ")" : render(x);
  };
  switch (t.kind()) {
    case Type::Kind::Atom:
      return quote_if_needed(t.symbol().name);
    case Type::Kind::Unit:
      return "1";
    case Type::Kind::Prod: {
      const auto& r = t.right();
      std::string rs = (r.is_implication() || r.is(Type::Kind::Prod)) ? "(" + render(r) + ")"
                                                                      : render(r);
      return operand(t.left()) + "*" + rs;
    }
    case Type::Kind::Under:
      return operand(t.arg()) + "\\" + operand(t.result());
    case Type::Kind::Over:
      return operand(t.result()) + "/" + operand(t.arg());
  }
  return {};
}

bool universe_less(const Type& a, const Type& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return render(a) < render(b);
}

Type mirror(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Under:
      return Type::over(mirror(t.result()), mirror(t.arg()));
    case Type::Kind::Over:
      return Type::under(mirror(t.arg()), mirror(t.result()));
    case Type::Kind::Prod:
      return Type::prod(mirror(t.right()), mirror(t.left()));
    default:
      return t;
  }
}

std::size_t SequentHash::operator()(const Sequent& s) const {
  std::size_t h = s.succedent.hash();
  for (const auto& t : s.antecedent) h = mix(h, t.hash());
  return mix(h, s.antecedent.size());
}

std::string render_item(const Type& t) {
  if (t.is(Type::Kind::Atom) && t.symbol().is_terminal()) {
    const auto& n = t.symbol().name;
    bool bare = !n.empty() && n.find("|-") == std::string::npos &&
                std::none_of(n.begin(), n.end(), reserved);
    return bare ? n : "\"" + n + "\"";
  }
  if (t.is(Type::Kind::Unit)) return "(1)";
  return render(t);
}

std::string render(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.antecedent.size(); ++i) {
    if (i) out += " , ";
    out += render_item(s.antecedent[i]);
  }
  if (!out.empty()) out += ' ';
  out += "|- " + render(s.succedent);
  return out;
}

namespace {

class TypeParser {
 public:
  TypeParser(std::string_view text, const Grammar& g, std::size_t offset)
      : text_(text), g_(g), offset_(offset) {}

  Type parse() {
    Type t = implication();
    skip();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw TypeSyntaxError(what, offset_ + pos_);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Type implication() {
    Type lhs = product();
    if (peek('\\') || peek('/')) {
      char op = text_[pos_++];
      Type rhs = product();
      if (peek('\\') || peek('/'))
        fail("nested implications need parentheses");
      return op == '\\' ? Type::under(lhs, rhs) : Type::over(lhs, rhs);
    }
    return lhs;
  }

  Type product() {
    Type t = primary();
    while (peek('*')) {
      ++pos_;
      t = Type::prod(t, primary());
    }
    return t;
  }

  Type primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of type");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Type t = implication();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return t;
    }
    if (c == '"') {
      auto end = text_.find('"', pos_ + 1);
      if (end == std::string_view::npos) fail("unterminated quoted atom");
      std::string name(text_.substr(pos_ + 1, end - pos_ - 1));
      auto start = pos_;
      pos_ = end + 1;
      return lookup(name, start);
    }
    if (reserved(c)) fail(std::string("unexpected '") + c + "'");
    auto start = pos_;
    while (pos_ < text_.size() && !reserved(text_[pos_])) {
      if (text_.substr(pos_, 2) == "|-") break;
      ++pos_;
    }
    if (pos_ == start) fail("expected a type");
    std::string name(text_.substr(start, pos_ - start));
    if (name == "1") return Type::unit();
    return lookup(name, start);
  }

  Type lookup(const std::string& name, std::size_t at) {
    auto sym = g_.lookup(name);
    if (!sym) {
      pos_ = at;
      fail("unknown atom '" + name + "'");
    }
    return Type::atom(*sym);
  }

  std::string_view text_;
  const Grammar& g_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s, std::size_t& offset) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  offset += b;
  return s.substr(b, e - b);
}

Type parse_item_at(std::string_view text, const Grammar& g, std::size_t offset) {
  auto item = trim(text, offset);
  if (item.empty()) throw TypeSyntaxError("empty antecedent item", offset);
  std::string s(item);
  bool token = std::none_of(s.begin(), s.end(), reserved) && s.find("|-") == std::string::npos;
  if (token && g.is_terminal(s)) return Type::atom(Symbol::terminal(s));
  return TypeParser(item, g, offset).parse();
}

}  // namespace

Type parse_type(std::string_view text, const Grammar& g) {
  return TypeParser(text, g, 0).parse();
}

Type parse_item(std::string_view text, const Grammar& g) { return parse_item_at(text, g, 0); }

Sequent parse_sequent(std::string_view text, const Grammar& g) {
  std::size_t turnstile = std::string_view::npos;
  bool quoted = false;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] == '"') quoted = !quoted;
    if (!quoted && text[i] == '|' && text[i + 1] == '-') {
      if (turnstile != std::string_view::npos) throw TypeSyntaxError("second '|-'", i);
      turnstile = i;
    }
  }
  if (turnstile == std::string_view::npos) throw TypeSyntaxError("missing '|-'", text.size());

  Sequent s;
  std::size_t succ_off = turnstile + 2;
  auto succ = trim(text.substr(turnstile + 2), succ_off);
  if (succ.empty()) throw TypeSyntaxError("missing succedent", succ_off);
  s.succedent = TypeParser(succ, g, succ_off).parse();

  auto ante = text.substr(0, turnstile);
  std::size_t probe = 0;
  if (trim(ante, probe).empty()) return s;
  int depth = 0;
  quoted = false;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= ante.size(); ++i) {
    if (i < ante.size()) {
      char c = ante[i];
      if (c == '"') quoted = !quoted;
      if (quoted) continue;
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c != ',' || depth != 0) continue;
    }
    s.antecedent.push_back(parse_item_at(ante.substr(begin, i - begin), g, begin));
    begin = i + 1;
  }
  return s;
}

TypeContext word_context(const Word& w) {
  TypeContext ctx;
  for (const auto& t : w) ctx.push_back(Type::atom(Symbol::terminal(t)));
  return ctx;
}

Sequent subtype_as_sequent(const Type& a, const Type& b) { return Sequent{{a}, b}; }

std::vector<Type> type_universe(const std::vector<Symbol>& atoms, std::size_t depth) {
  std::vector<Type> level;
  std::unordered_set<Type, TypeHash> seen;
  for (const auto& a : atoms) {
    Type t = Type::atom(a);
    if (seen.insert(t).second) level.push_back(t);
  }
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<Type> next = level;
    for (const auto& x : level) {
      for (const auto& y : level) {
        for (Type t : {Type::under(x, y), Type::over(x, y), Type::prod(x, y)})
          if (seen.insert(t).second) next.push_back(t);
      }
    }
    level = std::move(next);
  }
  level.push_back(Type::unit());
  std::vector<std::pair<std::string, Type>> keyed;
  keyed.reserve(level.size());
  for (auto& t : level) keyed.emplace_back(render(t), std::move(t));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.second.size() != b.second.size()) return a.second.size() < b.second.size();
    return a.first < b.first;
  });
  std::vector<Type> out;
  out.reserve(keyed.size());
  for (auto& [_, t] : keyed) out.push_back(std::move(t));
  return out;
}

std::vector<Symbol> nonterminal_atoms(const Grammar& g) {
  std::vector<Symbol> out;
  for (const auto& a : g.nonterminals()) out.push_back(Symbol::nonterminal(a));
  return out;
}

}  // namespace lambek
