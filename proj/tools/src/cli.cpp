#include "dposet_cli/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dposet/automorphisms.hpp"
#include "dposet/catalog.hpp"
#include "dposet/digraph.hpp"
#include "dposet/error.hpp"
#include "dposet/families.hpp"
#include "dposet/fo.hpp"
#include "dposet/lemmas.hpp"

namespace dposet::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Globals {
  bool pretty = false;
  bool timing = false;
};

std::string dump(const ojson& j, bool pretty) { return (pretty ? j.dump(2) : j.dump()) + "\n"; }

// Library exporters always indent; compact mode re-serializes them.
std::string restyle(const std::string& text, bool pretty) {
  return pretty ? text : dump(ojson::parse(text), false);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::BadFormat, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& text, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (seps.find(c) != std::string::npos) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<int> parse_sizes(const std::string& flag, const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ",:")) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) throw CLI::ValidationError(flag, "not an integer list: " + text);
    out.push_back(v);
  }
  return out;
}

// "k=v,k=v"; list values inside use ':'.
Params parse_params(const std::string& text) {
  Params out;
  if (text.empty()) return out;
  for (const auto& item : split(text, ",")) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--params", "expected k=v, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

int exit_for(bool pass) { return pass ? kOk : kFailed; }

// enumerate

struct EnumerateArgs {
  int max_n = 2;
};

int cmd_enumerate(const EnumerateArgs& a, const Globals& g, std::ostream& out) {
  const Catalog cat = load_or_build(a.max_n, default_cache_dir(), a.max_n > kDefaultMaxLevel);
  if (g.pretty) {
    out << std::setw(3) << "n" << "  " << std::setw(8) << "types" << "\n";
    for (const auto& level : cat.levels)
      if (level.n <= a.max_n) out << std::setw(3) << level.n << "  " << std::setw(8) << level.members.size() << "\n";
    return kOk;
  }
  out << restyle(export_catalog(cat, ExportWhat::Levels, ExportFormat::Json, a.max_n), false);
  return kOk;
}

// hasse

struct HasseArgs {
  std::string order = "sub";
  int max_level = 2;
  std::string format = "json";
};

int cmd_hasse(const HasseArgs& a, const Globals& g, std::ostream& out) {
  const bool emb = a.order == "emb";
  // Grade-k elements in the embeddability order have at most k vertices.
  const int max_n = std::min(a.max_level, kDefaultMaxLevel);
  const Catalog cat = load_or_build(max_n, default_cache_dir());
  const auto format = a.format == "dot" ? ExportFormat::Dot : ExportFormat::Json;
  const std::string text = export_catalog(cat, emb ? ExportWhat::HasseEmb : ExportWhat::HasseSub, format, a.max_level);
  out << (format == ExportFormat::Json ? restyle(text, g.pretty) : text);
  return kOk;
}

// fo-eval

struct FoArgs {
  std::string formula;
  int universe_n = 2;
  std::string order = "sub";
  std::vector<std::string> binds;
};

int cmd_fo_eval(const FoArgs& a, const Globals& g, std::ostream& out) {
  const auto f = fo::parse(read_file(a.formula));
  const Poset& universe = shared_poset(a.universe_n, a.order == "emb" ? Order::Emb : Order::Sub);
  fo::Binding binding;
  for (const auto& b : a.binds) {
    const auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--bind", "expected var=CONST, got '" + b + "'");
    binding[b.substr(0, eq)] = fo::constant(b.substr(eq + 1)).code;
  }
  std::vector<std::string> open;
  for (const auto& v : fo::free_variables(*f))
    if (!binding.count(v)) open.push_back(v);

  ojson j;
  j["formula"] = fo::print(*f);
  j["order"] = a.order;
  j["universe_n"] = a.universe_n;
  ojson jb = ojson::object();
  for (const auto& [k, v] : binding) jb[k] = v.text();
  j["bindings"] = jb;
  if (open.empty()) {
    j["value"] = fo::evaluate(*f, universe, binding);
  } else if (open.size() == 1) {
    auto members = ojson::array();
    for (const auto& code : universe.elements()) {
      binding[open[0]] = code;
      if (fo::evaluate(*f, universe, binding)) members.push_back(code.text());
    }
    j["variable"] = open[0];
    j["defined_set"] = members;
  } else {
    throw Error(Errc::BadArity, "more than one unbound free variable; bind all but one with --bind");
  }
  out << dump(j, g.pretty);
  return kOk;
}

// aut

struct AutArgs {
  std::string action = "closure";
  int max_n = 0;  // 0: 3 for verify, 4 for identities
  std::string rule;
  bool all = false;
};

int cmd_aut(const AutArgs& a, const Globals& g, std::ostream& out) {
  if (a.action == "closure") {
    const auto full = closure(all_generators(true));
    const auto sub = closure(all_generators(false));
    ojson j;
    j["generators"] = all_generators(true).size();
    j["order"] = full.size();
    j["order_without_phi1"] = sub.size();
    out << dump(j, g.pretty);
    return kOk;
  }
  if (a.action == "identities") {
    const AutReport rep = verify_structure(a.max_n ? a.max_n : 4);
    out << rep.to_json(g.pretty) << "\n";
    return exit_for(rep.passed());
  }
  const int n = a.max_n ? a.max_n : 3;
  std::vector<LocalRule> rules;
  if (!a.rule.empty()) rules.push_back(rule_of_generator(a.rule));
  else if (a.all) rules = closure(all_generators(true));
  else rules = all_generators(true);
  const Poset& universe = shared_poset(n, Order::Sub);
  bool pass = true;
  auto arr = ojson::array();
  for (const auto& r : rules) {
    const AutReport rep = verify_automorphism(r, universe);
    pass &= rep.passed();
    arr.push_back(ojson::parse(rep.to_json()));
  }
  ojson j;
  j["max_n"] = n;
  j["status"] = pass ? "pass" : "fail";
  j["reports"] = arr;
  out << dump(j, g.pretty);
  return exit_for(pass);
}

// verify-lemma

struct LemmaArgs {
  std::string id;
  int universe_n = 4;
  int margin = -1;
  std::string params;
};

int cmd_verify_lemma(const LemmaArgs& a, const Globals& g, std::ostream& out) {
  const Params params = parse_params(a.params);
  if (a.id != "all") {
    const LemmaReport r = run_lemma(a.id, a.universe_n, a.margin, params);
    out << r.to_json(g.pretty, g.timing) << "\n";
    return exit_for(r.status != LemmaStatus::Fail);
  }
  if (!params.empty()) throw CLI::ValidationError("--params", "not accepted with --id all");
  bool pass = true;
  auto arr = ojson::array();
  for (const auto& info : lemma_registry()) {
    const LemmaReport r = run_lemma(info.id, a.universe_n, a.margin);
    pass &= r.status != LemmaStatus::Fail;
    arr.push_back(ojson::parse(r.to_json(false, g.timing)));
  }
  out << dump(arr, g.pretty);
  return exit_for(pass);
}

// main-theorem

struct MainArgs {
  std::string graph;
  std::string l_sizes;
  std::string d_sizes;
  int samples = 1000;
  std::uint64_t seed = 1;
};

int cmd_main_theorem(const MainArgs& a, const Globals& g, std::ostream& out) {
  const Digraph graph = read_dgf_file(a.graph);
  SupportSpec spec = default_support_spec(graph);
  if (!a.l_sizes.empty()) spec.l_sizes = parse_sizes("--l-sizes", a.l_sizes);
  if (!a.d_sizes.empty()) spec.d_sizes = parse_sizes("--d-sizes", a.d_sizes);
  const LemmaReport r = verify_main_theorem(graph, spec, a.samples, a.seed);
  out << r.to_json(g.pretty, g.timing) << "\n";
  return exit_for(r.passed());
}

// graph

struct GraphArgs {
  std::string op;
  std::string a;
  std::string b;
};

int cmd_graph(const GraphArgs& a, std::ostream& out) {
  const Digraph ga = read_dgf_file(a.a);
  if (a.op == "canon") {
    out << canonical_form(ga).text() << "\n";
    return kOk;
  }
  if (a.b.empty()) throw CLI::RequiredError("--b");
  const Digraph gb = read_dgf_file(a.b);
  bool result = false;
  if (a.op == "iso") result = is_isomorphic(ga, gb);
  else if (a.op == "sub") result = is_substructure(ga, gb);
  else result = is_embeddable(ga, gb);
  out << (result ? "true" : "false") << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Digraph substructure and embeddability posets", "dposet"};
  app.require_subcommand(1, 1);
  Globals globals;
  app.add_flag("--pretty", globals.pretty, "Indented JSON; human table for enumerate");
  app.add_flag("--timing", globals.timing, "Include elapsed_seconds in lemma reports");

  EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "Isomorphism types per vertex count");
  enumerate->add_option("--max-n", en.max_n, "Largest vertex count")->check(CLI::Range(1, kExtendedMaxLevel));

  HasseArgs hs;
  auto* hasse = app.add_subcommand("hasse", "Cover relation of the substructure or embeddability order");
  hasse->add_option("--order", hs.order)->check(CLI::IsMember({"sub", "emb"}));
  hasse->add_option("--max-level", hs.max_level, "Largest grade")->check(CLI::Range(1, kDefaultMaxLevel));
  hasse->add_option("--format", hs.format)->check(CLI::IsMember({"dot", "json"}));

  FoArgs fa;
  auto* fo_eval = app.add_subcommand("fo-eval", "Evaluate a first-order formula on a finite universe");
  fo_eval->add_option("--formula", fa.formula, "Formula file")->required()->check(CLI::ExistingFile);
  fo_eval->add_option("--universe-n", fa.universe_n, "Vertex bound of the universe")->check(CLI::Range(1, kDefaultMaxLevel));
  fo_eval->add_option("--order", fa.order)->check(CLI::IsMember({"sub", "emb"}));
  fo_eval->add_option("--bind", fa.binds, "var=CONST, repeatable")->take_all();

  AutArgs aa;
  auto* aut = app.add_subcommand("aut", "Automorphism group checks");
  aut->add_option("--action", aa.action)->required()->check(CLI::IsMember({"closure", "verify", "identities"}));
  aut->add_option("--max-n", aa.max_n, "Universe bound")->check(CLI::Range(1, kDefaultMaxLevel));
  aut->add_option("--rule", aa.rule, "Single generator for verify: phi1..phi5, pi:<perm>, id");
  aut->add_flag("--all", aa.all, "Verify every element of the closure");

  LemmaArgs la;
  auto* lemma = app.add_subcommand("verify-lemma", "Run a registry lemma");
  lemma->add_option("--id", la.id, "Registry id or 'all'")->required();
  lemma->add_option("--universe-n", la.universe_n, "Universe bound")->check(CLI::Range(1, kExtendedMaxLevel));
  lemma->add_option("--margin", la.margin, "Relativization margin; default per lemma")->check(CLI::Range(-1, 4));
  lemma->add_option("--params", la.params, "k=v,... (lists use ':')");

  MainArgs ma;
  auto* main_thm = app.add_subcommand("main-theorem", "Encode/decode pipeline on a 1- or 2-vertex digraph");
  main_thm->add_option("--graph", ma.graph, "DGF file")->required()->check(CLI::ExistingFile);
  main_thm->add_option("--l-sizes", ma.l_sizes, "Vertex circle sizes a,b");
  main_thm->add_option("--d-sizes", ma.d_sizes, "Edge circle sizes c,d");
  main_thm->add_option("--samples", ma.samples)->check(CLI::NonNegativeNumber);
  main_thm->add_option("--seed", ma.seed);

  GraphArgs ga;
  auto* graph = app.add_subcommand("graph", "Canonical form and order tests on DGF files");
  graph->add_option("--op", ga.op)->required()->check(CLI::IsMember({"canon", "iso", "sub", "emb"}));
  graph->add_option("--a", ga.a, "DGF file")->required()->check(CLI::ExistingFile);
  graph->add_option("--b", ga.b, "DGF file")->check(CLI::ExistingFile);

  std::vector<std::string> storage{"dposet"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (*enumerate) return cmd_enumerate(en, globals, out);
    if (*hasse) return cmd_hasse(hs, globals, out);
    if (*fo_eval) return cmd_fo_eval(fa, globals, out);
    if (*aut) return cmd_aut(aa, globals, out);
    if (*lemma) return cmd_verify_lemma(la, globals, out);
    if (*main_thm) return cmd_main_theorem(ma, globals, out);
    return cmd_graph(ga, out);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);  // --help
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace dposet::cli
