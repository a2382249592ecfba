#include "lambek/cli.hpp"

#include <filesystem>
#include <sstream>

#include "CLI11.hpp"
#include "lambek/analyzer.hpp"
#include "lambek/parser.hpp"
#include "lambek/proof.hpp"
#include "lambek/prover.hpp"
#include "lambek/semantics.hpp"

#ifndef LAMBEK_GRAMMAR_DIR
#define LAMBEK_GRAMMAR_DIR ""
#endif

namespace lambek::cli {

namespace {

struct Options {
  std::string grammar;
  std::size_t max_depth = 40;
  std::size_t insert_budget = 2;
  std::optional<std::size_t> max_len;
  std::optional<std::size_t> out_len;
  std::size_t depth = 1;
  bool tree = false;
  bool json = false;
  bool general_cut = false;
  bool oracle = false;
  std::vector<std::string> axioms;

  std::string positional;
  std::string atoms;
  std::string prefix, suffix, goal, expect, input;
  std::size_t capture_depth = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string resolve_grammar(const std::string& path, const std::map<std::string, std::string>& env) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  std::vector<std::string> dirs;
  if (auto it = env.find("LAMBEK_GRAMMARS"); it != env.end()) dirs.push_back(it->second);
  if (std::string(LAMBEK_GRAMMAR_DIR).size()) dirs.emplace_back(LAMBEK_GRAMMAR_DIR);
  for (const auto& d : dirs) {
    fs::path p = fs::path(d) / path;
    if (fs::exists(p)) return p.string();
  }
  throw UsageError("grammar file '" + path + "' not found");
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--grammar", o.grammar, "grammar file")->required();
  sub->add_option("--max-depth", o.max_depth, "proof search depth bound");
  sub->add_option("--insert-budget", o.insert_budget, "nullable insertions per branch");
  sub->add_option("--max-len", o.max_len, "length bound for test words / enumeration");
  sub->add_option("--out-len", o.out_len, "length bound for antecedent words (oracle)");
  sub->add_option("--depth", o.depth, "type universe depth (infer)");
  sub->add_flag("--tree", o.tree, "print the proof");
  sub->add_flag("--json", o.json, "JSON output");
  sub->add_flag("--general-cut", o.general_cut, "allow cuts on universe types");
  sub->add_flag("--oracle", o.oracle, "refute with the bounded semantics before searching");
  sub->add_option("--axiom", o.axioms, "extra axiom sequent (repeatable)");
}

SearchConfig search_config(const Options& o) {
  SearchConfig c;
  c.max_depth = o.max_depth;
  c.insert_budget = o.insert_budget;
  c.enable_general_cut = o.general_cut;
  c.oracle_prescreen = o.oracle;
  if (o.max_len) c.oracle_len = *o.max_len;
  return c;
}

std::vector<Symbol> parse_atoms(const std::string& text, const Grammar& g) {
  if (text.empty()) return nonterminal_atoms(g);
  std::string spaced = text;
  for (auto& ch : spaced)
    if (ch == ',') ch = ' ';
  std::vector<Symbol> out;
  for (const auto& name : tokenize(spaced)) {
    auto s = g.lookup(name);
    if (!s) throw UsageError("unknown atom '" + name + "'");
    out.push_back(*s);
  }
  return out;
}

int run_prove(const Options& o, const Grammar& g, const std::vector<Sequent>& axioms,
              bool always_tree, std::ostream& out) {
  Sequent s = parse_sequent(o.positional, g);
  auto r = prove(g, s, search_config(o), axioms);
  if (r.proved()) {
    auto ok = check_proof(g, *r.proof, axioms);
    if (!ok.ok) throw std::logic_error("prover produced an invalid proof: " + ok.reason);
  }
  if (o.json) {
    nlohmann::json j;
    j["sequent"] = render(s);
    j["outcome"] = std::string(outcome_name(r.outcome));
    if (r.proof) j["proof"] = proof_to_json(*r.proof);
    if (r.counterexample) j["counterexample"] = *r.counterexample;
    out << j.dump(2) << "\n";
  } else {
    switch (r.outcome) {
      case SearchResult::Outcome::Proved:
        out << "PROVED\n";
        if (always_tree || o.tree) out << render_proof(g, *r.proof, axioms);
        break;
      case SearchResult::Outcome::NotFoundWithinBounds:
        out << "NOT FOUND WITHIN BOUNDS\n";
        break;
      case SearchResult::Outcome::RefutedByOracle:
        out << "REFUTED BY ORACLE: " << join(*r.counterexample) << "\n";
        break;
    }
  }
  return r.proved() ? 0 : 1;
}

int run_infer(const Options& o, const Grammar& g, const std::vector<Sequent>& axioms,
              std::ostream& out) {
  Word w = tokenize(o.positional);
  for (const auto& t : w)
    if (!g.is_terminal(t)) throw UsageError("unknown token '" + t + "'");
  auto typings = infer_typings(g, w, parse_atoms(o.atoms, g), o.depth, search_config(o), axioms);
  if (o.json) {
    nlohmann::json j;
    j["input"] = w;
    j["typings"] = nlohmann::json::array();
    for (const auto& t : typings)
      j["typings"].push_back({{"type", render(t.type)}, {"proof", proof_to_json(t.proof)}});
    out << j.dump(2) << "\n";
  } else {
    for (const auto& t : typings) {
      out << render(t.proof.conclusion) << "\n";
      if (o.tree) out << render_proof(g, t.proof, axioms);
    }
  }
  return typings.empty() ? 1 : 0;
}

int run_analyze(const Options& o, const Grammar& g, const std::vector<Sequent>& axioms,
                std::ostream& out) {
  if (o.goal.empty() || o.expect.empty()) throw UsageError("analyze needs --goal and --expect");
  InjectionContext ctx{tokenize(o.prefix), tokenize(o.suffix), o.goal, o.expect};
  SemBound b{o.max_len.value_or(4), std::nullopt};
  AnalyzerOptions opts;
  opts.capture_depth = o.capture_depth;
  auto rep = classify_input(g, ctx, tokenize(o.input), search_config(o), b, opts, axioms);
  if (o.json)
    out << report_to_json(rep).dump(2) << "\n";
  else
    out << render_report(rep);
  return rep.classification == Classification::Benign ? 0 : 1;
}

int run_enum(const Options& o, const Grammar& g, std::ostream& out) {
  auto sym = g.lookup(o.positional);
  if (!sym) throw UsageError("unknown symbol '" + o.positional + "'");
  std::size_t len = o.max_len.value_or(4);
  auto words = enumerate_words(g, *sym, len);
  if (o.json) {
    nlohmann::json j;
    j["symbol"] = sym->name;
    j["max_len"] = len;
    j["words"] = nlohmann::json::array();
    for (const auto& w : words) j["words"].push_back(w);
    out << j.dump(2) << "\n";
  } else {
    for (const auto& w : words) out << (w.empty() ? std::string("ε") : join(w)) << "\n";
  }
  return 0;
}

int run_oracle(const Options& o, const Grammar& g, const std::vector<Sequent>& axioms,
               std::ostream& out) {
  Sequent s = parse_sequent(o.positional, g);
  SemBound b{o.max_len.value_or(4), std::nullopt};
  std::size_t out_len = o.out_len.value_or(b.max_len);
  std::optional<Grammar> model;
  if (!axioms.empty()) model = axiom_model(g, axioms, b).grammar;
  auto cex = soundness_check(model ? *model : g, s, b, out_len);
  if (o.json) {
    nlohmann::json j;
    j["sequent"] = render(s);
    j["outcome"] = cex ? "Counterexample" : "Pass";
    if (cex) j["counterexample"] = *cex;
    j["max_len"] = b.max_len;
    j["out_len"] = out_len;
    out << j.dump(2) << "\n";
  } else if (cex) {
    out << "COUNTEREXAMPLE: " << (cex->empty() ? std::string("ε") : join(*cex)) << "\n";
  } else {
    out << "PASS\n";
  }
  return cex ? 1 : 0;
}

int run_ambig(const Options& o, const Grammar& g, std::ostream& out) {
  std::string nt = o.positional.empty() ? g.start() : o.positional;
  if (!g.is_nonterminal(nt)) throw UsageError("unknown nonterminal '" + nt + "'");
  std::size_t len = o.max_len.value_or(8);
  auto wit = check_unambiguous(g, nt, len);
  if (o.json) {
    nlohmann::json j;
    j["nonterminal"] = nt;
    j["max_len"] = len;
    j["outcome"] = wit ? "Witness" : "Pass";
    if (wit) {
      j["word"] = wit->word;
      j["trees"] = {tree_to_json(wit->first), tree_to_json(wit->second)};
    }
    out << j.dump(2) << "\n";
  } else if (wit) {
    out << "WITNESS: " << join(wit->word) << "\n"
        << render_tree(wit->first) << "--\n"
        << render_tree(wit->second);
  } else {
    out << "PASS\n";
  }
  return wit ? 1 : 0;
}

}  // namespace

Outcome run(const std::vector<std::string>& args, const std::string& stdin_text,
            const std::map<std::string, std::string>& env) {
  std::ostringstream out, err;
  Options o;
  CLI::App app{"Lambek calculus over a context-free grammar"};
  app.name("lambek");
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "search for a proof of a sequent");
  auto* prove_cmd = app.add_subcommand("prove", "search for a proof and print it");
  auto* infer = app.add_subcommand("infer", "list provable types of a word");
  auto* analyze = app.add_subcommand("analyze", "classify an input against a context");
  auto* enumerate = app.add_subcommand("enum", "list words of a symbol");
  auto* oracle = app.add_subcommand("oracle", "bounded semantic check of a sequent");
  auto* ambig = app.add_subcommand("ambig", "bounded ambiguity check");
  for (auto* sub : {check, prove_cmd, infer, analyze, enumerate, oracle, ambig}) add_common(sub, o);
  for (auto* sub : {check, prove_cmd, oracle})
    sub->add_option("sequent", o.positional, "t1 , t2 |- t")->required();
  infer->add_option("word", o.positional, "whitespace-separated tokens")->required();
  infer->add_option("--atoms", o.atoms, "atoms of the type universe (default: all nonterminals)");
  enumerate->add_option("symbol", o.positional)->required();
  ambig->add_option("nonterminal", o.positional, "defaults to the start symbol");
  analyze->add_option("--prefix", o.prefix, "tokens before the hole");
  analyze->add_option("--suffix", o.suffix, "tokens after the hole");
  analyze->add_option("--goal", o.goal, "category of the whole")->required();
  analyze->add_option("--expect", o.expect, "category expected in the hole")->required();
  analyze->add_option("--input", o.input, "candidate input")->required();
  analyze->add_option("--capture-depth", o.capture_depth, "universe depth for capture shapes");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return {code == 0 ? 0 : 2, out.str(), err.str()};
  }
  if (o.positional == "-") o.positional = stdin_text;
  if (o.input == "-") o.input = stdin_text;

  try {
    auto loaded = validate(load_grammar_file(resolve_grammar(o.grammar, env)));
    for (const auto& d : loaded.diagnostics) err << "warning: " << d.symbol << ": " << d.message << "\n";
    const Grammar& g = loaded.grammar;
    std::vector<Sequent> axioms;
    for (const auto& a : o.axioms) axioms.push_back(parse_sequent(a, g));

    int code = 0;
    if (check->parsed()) code = run_prove(o, g, axioms, false, out);
    else if (prove_cmd->parsed()) code = run_prove(o, g, axioms, true, out);
    else if (infer->parsed()) code = run_infer(o, g, axioms, out);
    else if (analyze->parsed()) code = run_analyze(o, g, axioms, out);
    else if (enumerate->parsed()) code = run_enum(o, g, out);
    else if (oracle->parsed()) code = run_oracle(o, g, axioms, out);
    else if (ambig->parsed()) code = run_ambig(o, g, out);
    return {code, out.str(), err.str()};
  } catch (const TypeSyntaxError& e) {
    err << "error: type syntax " << e.what() << "\n";
  } catch (const GrammarError& e) {
    err << "error: grammar: " << e.what() << "\n";
  } catch (const ContextError& e) {
    err << "error: context: " << e.what() << "\n";
  } catch (const AmbiguityError& e) {
    err << "error: ambiguity: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  }
  return {2, out.str(), err.str()};
}

}  // namespace lambek::cli
