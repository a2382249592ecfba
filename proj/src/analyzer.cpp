#include "lambek/analyzer.hpp"

#include <functional>
#include <map>

#include "lambek/earley.hpp"

namespace lambek {

namespace {

TypeContext operator+(TypeContext a, const TypeContext& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Type nt_atom(const std::string& name) { return Type::atom(Symbol::nonterminal(name)); }

nlohmann::json word_json(const Word& w) { return nlohmann::json(w); }

void collect_spans(const ParseTree& t, std::size_t offset, const std::string& label,
                   std::size_t from, std::size_t len, std::vector<std::size_t>& path,
                   std::vector<std::vector<std::size_t>>& out) {
  if (t.symbol.is_nonterminal() && t.symbol.name == label && offset == from &&
      t.yield.size() == len)
    out.push_back(path);
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    path.push_back(i);
    collect_spans(t.children[i], offset, label, from, len, path, out);
    path.pop_back();
    offset += t.children[i].yield.size();
  }
}

}  // namespace

void validate_context(const Grammar& g, const InjectionContext& ctx) {
  if (!g.is_nonterminal(ctx.goal)) throw ContextError("goal '" + ctx.goal + "' is not a nonterminal");
  if (!g.is_nonterminal(ctx.expected))
    throw ContextError("expected '" + ctx.expected + "' is not a nonterminal");
  for (const auto& w : {ctx.prefix, ctx.suffix})
    for (const auto& t : w)
      if (!g.is_terminal(t)) throw ContextError("unknown token '" + t + "' in context");
  auto [hg, mark] = extend_with_hole(g, ctx.expected);
  Word probe = ctx.prefix;
  probe.push_back(mark.fresh_token);
  probe.insert(probe.end(), ctx.suffix.begin(), ctx.suffix.end());
  if (!recognize(hg, ctx.goal, probe))
    throw ContextError("context '" + render_context(ctx) + "' does not parse as " + ctx.goal +
                       " with " + ctx.expected + " in the hole");
}

std::string render_context(const InjectionContext& ctx) {
  Word w = ctx.prefix;
  w.push_back("□");
  w.insert(w.end(), ctx.suffix.begin(), ctx.suffix.end());
  return join(w);
}

WordSet hole_language(const Grammar& g, const InjectionContext& ctx, std::size_t out_len) {
  WordSet out;
  EarleyRecognizer r(g, ctx.goal);
  if (!r.feed(ctx.prefix)) return out;
  Word w;
  std::function<void()> dfs = [&]() {
    for (const auto& t : ctx.suffix) r.feed(t);
    if (r.accepted()) out.insert(w);
    for (std::size_t i = 0; i < ctx.suffix.size(); ++i) r.unfeed();
    if (w.size() == out_len) return;
    for (const auto& t : g.terminals()) {
      if (r.feed(t)) {
        w.push_back(t);
        dfs();
        w.pop_back();
      }
      r.unfeed();
    }
  };
  dfs();
  return out;
}

std::vector<Typing> infer_typings(const Grammar& g, const Word& w,
                                  const std::vector<Symbol>& atoms, std::size_t depth,
                                  const SearchConfig& cfg, std::span<const Sequent> axioms) {
  std::vector<Typing> out;
  TypeContext ctx = word_context(w);
  // Without extra axioms a bounded non-membership rules a type out exactly.
  Semantics sem(g, SemBound{4, std::nullopt});
  for (const auto& t : type_universe(atoms, depth)) {
    if (axioms.empty() && !sem.member(w, t)) continue;
    auto r = prove(g, Sequent{ctx, t}, cfg, axioms);
    if (r.proved()) out.push_back({t, std::move(*r.proof)});
  }
  return out;
}

std::string_view direction_name(Direction d) { return d == Direction::Left ? "Left" : "Right"; }

Type capture_type(Direction d, const Type& expected, const Type& psi, const Type& pi) {
  if (d == Direction::Left) return Type::under(Type::over(psi, expected), pi);
  return Type::over(pi, Type::under(expected, psi));
}

std::string_view reshaping_name(Reshaping r) {
  switch (r) {
    case Reshaping::ConservativeExtension:
      return "ConservativeExtension";
    case Reshaping::Reshaped:
      return "Reshaped";
    case Reshaping::Unparseable:
      return "Unparseable";
  }
  return "?";
}

std::string_view classification_name(Classification c) {
  switch (c) {
    case Classification::Benign:
      return "Benign";
    case Classification::Capturing:
      return "Capturing";
    case Classification::IllFormed:
      return "IllFormed";
    case Classification::Unknown:
      return "Unknown";
  }
  return "?";
}

ReshapeResult reshaping_check(const Grammar& g, const InjectionContext& ctx, const Word& w) {
  validate_context(g, ctx);
  auto [hg, mark] = extend_with_hole(g, ctx.expected);
  Word with_hole = ctx.prefix;
  with_hole.push_back(mark.fresh_token);
  with_hole.insert(with_hole.end(), ctx.suffix.begin(), ctx.suffix.end());
  auto pc = parse_tree(hg, ctx.goal, with_hole);
  if (pc.kind == ParseResult::Kind::Ambiguous)
    throw AmbiguityError("context '" + render_context(ctx) + "' has two parse trees");

  ReshapeResult out;
  out.context_tree = pc.trees.at(0);
  Word full = concat(concat(ctx.prefix, w), ctx.suffix);
  auto pf = parse_tree(g, ctx.goal, full);
  if (pf.kind == ParseResult::Kind::Reject) return out;
  if (pf.kind == ParseResult::Kind::Ambiguous)
    throw AmbiguityError("'" + join(full) + "' has two parse trees");
  out.combined_tree = pf.trees[0];

  std::vector<std::vector<std::size_t>> candidates;
  std::vector<std::size_t> path;
  collect_spans(*out.combined_tree, 0, ctx.expected, ctx.prefix.size(), w.size(), path,
                candidates);
  const int hole_prod = static_cast<int>(hg.productions().size()) - 1;
  out.verdict = Reshaping::Reshaped;
  for (const auto& p : candidates) {
    ParseTree t = *out.combined_tree;
    ParseTree* node = &t;
    for (auto i : p) node = &node->children[i];
    ParseTree hole;
    hole.symbol = Symbol::nonterminal(ctx.expected);
    hole.production = hole_prod;
    hole.children.push_back(ParseTree::leaf(mark.fresh_token));
    hole.yield = {mark.fresh_token};
    *node = std::move(hole);
    if (isomorphic(t, *out.context_tree)) {
      out.verdict = Reshaping::ConservativeExtension;
      break;
    }
  }
  return out;
}

InjectionReport classify_input(const Grammar& g, const InjectionContext& ctx, const Word& w,
                               const SearchConfig& cfg, const SemBound& b,
                               const AnalyzerOptions& opts, std::span<const Sequent> axioms) {
  validate_context(g, ctx);
  InjectionReport rep;
  rep.input = w;
  rep.context = ctx;
  rep.search = cfg;
  rep.bound = b;

  for (const auto& t : w)
    if (!g.is_terminal(t)) throw ContextError("unknown token '" + t + "' in input");

  const Type expected = nt_atom(ctx.expected);
  const Type goal = nt_atom(ctx.goal);
  const TypeContext input = word_context(w);
  const TypeContext prefix = word_context(ctx.prefix);
  const TypeContext suffix = word_context(ctx.suffix);
  auto provable = [&](const Sequent& s) { return prove(g, s, cfg, axioms); };

  Word full = concat(concat(ctx.prefix, w), ctx.suffix);
  rep.combined_parses = recognize(g, ctx.goal, full);
  if (rep.combined_parses) rep.reshaping = reshaping_check(g, ctx, w);

  if (auto r = provable(Sequent{input, expected}); r.proved()) {
    rep.benign_proof = std::move(r.proof);
    rep.classification = Classification::Benign;
    return rep;
  }

  // Semantic prescreen: a bounded counterexample rules a candidate out exactly.
  std::optional<Grammar> model;
  if (!axioms.empty()) model = axiom_model(g, axioms, b).grammar;
  Semantics sem(model ? *model : g, b);

  std::map<std::pair<int, std::string>, bool> fits;
  auto fit = [&](Direction d, const Type& psi, const Type& pi) {
    if (!opts.require_fit) return true;
    auto key = std::make_pair(static_cast<int>(d), render(psi) + " " + render(pi));
    if (auto it = fits.find(key); it != fits.end()) return it->second;
    bool ok;
    if (d == Direction::Left)
      ok = provable(Sequent{prefix, Type::over(psi, expected)}).proved() &&
           provable(Sequent{TypeContext{pi} + suffix, goal}).proved();
    else
      ok = provable(Sequent{suffix, Type::under(expected, psi)}).proved() &&
           provable(Sequent{prefix + TypeContext{pi}, goal}).proved();
    fits.emplace(key, ok);
    return ok;
  };

  std::vector<Type> pool;
  for (const auto& t : type_universe(nonterminal_atoms(g), opts.capture_depth))
    if (!t.is(Type::Kind::Unit)) pool.push_back(t);
  for (Direction d : {Direction::Left, Direction::Right}) {
    for (const auto& psi : pool) {
      for (const auto& pi : pool) {
        Type full_type = capture_type(d, expected, psi, pi);
        Sequent s{input, full_type};
        if (sem.counterexample(s, w.size())) continue;
        if (!fit(d, psi, pi)) continue;
        auto r = provable(s);
        if (r.proved()) rep.captures.push_back({d, psi, pi, full_type, std::move(*r.proof)});
      }
    }
  }
  if (!rep.captures.empty())
    rep.classification = Classification::Capturing;
  else if (!rep.combined_parses)
    rep.classification = Classification::IllFormed;
  else
    rep.classification = Classification::Unknown;
  return rep;
}

nlohmann::json report_to_json(const InjectionReport& r) {
  nlohmann::json j;
  j["classification"] = std::string(classification_name(r.classification));
  j["input"] = word_json(r.input);
  j["context"] = {{"prefix", word_json(r.context.prefix)},
                  {"suffix", word_json(r.context.suffix)},
                  {"goal", r.context.goal},
                  {"expected", r.context.expected}};
  if (r.benign_proof) j["benign_proof"] = proof_to_json(*r.benign_proof);
  j["captures"] = nlohmann::json::array();
  for (const auto& c : r.captures)
    j["captures"].push_back({{"direction", std::string(direction_name(c.direction))},
                             {"type", render(c.full_type)},
                             {"proof", proof_to_json(c.proof)}});
  j["combined_parses"] = r.combined_parses;
  auto& rs = j["reshaping"];
  rs["verdict"] = std::string(reshaping_name(r.reshaping.verdict));
  if (r.reshaping.context_tree) rs["context_tree"] = tree_to_json(*r.reshaping.context_tree);
  if (r.reshaping.combined_tree) rs["combined_tree"] = tree_to_json(*r.reshaping.combined_tree);
  j["bounds"] = {{"max_depth", r.search.max_depth},
                 {"insert_budget", r.search.insert_budget},
                 {"enable_general_cut", r.search.enable_general_cut},
                 {"cut_formula_depth", r.search.cut_formula_depth},
                 {"max_len", r.bound.max_len}};
  return j;
}

std::string render_report(const InjectionReport& r) {
  std::string out;
  out += "classification: " + std::string(classification_name(r.classification)) + "\n";
  out += "input: " + join(r.input) + "\n";
  out += "context: " + render_context(r.context) + "   (goal " + r.context.goal + ", hole " +
         r.context.expected + ")\n";
  out += "benign typing: ";
  out += r.benign_proof ? render(r.benign_proof->conclusion) : std::string("none within bounds");
  out += "\n";
  if (!r.captures.empty()) {
    out += "captures:\n";
    for (const auto& c : r.captures)
      out += "  " + std::string(direction_name(c.direction)) + "  " + render(c.full_type) + "\n";
  }
  out += "combined string parses: " + std::string(r.combined_parses ? "yes" : "no") + "\n";
  out += "reshaping: " + std::string(reshaping_name(r.reshaping.verdict)) + "\n";
  if (r.reshaping.combined_tree) {
    out += "combined tree:\n";
    std::string t = render_tree(*r.reshaping.combined_tree);
    for (std::size_t i = 0, s = 0; i <= t.size(); ++i) {
      if (i == t.size() || t[i] == '\n') {
        if (i > s) out += "  " + t.substr(s, i - s) + "\n";
        s = i + 1;
      }
    }
  }
  return out;
}

}  // namespace lambek
