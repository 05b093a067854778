#include <json.hpp>

#include "dposet/error.hpp"
#include "dposet/lemmas.hpp"
#include "lemma_support.hpp"

namespace dposet {

void LemmaReport::check(const std::string& name, bool pass, const std::string& detail,
                        std::vector<std::string> counterexample) {
  checks.push_back({name, pass, detail});
  if (pass) return;
  if (status != LemmaStatus::Skipped) status = LemmaStatus::Fail;
  if (counterexample.empty()) counterexample.push_back(name);
  counterexamples.push_back(std::move(counterexample));
}

void LemmaReport::skip(const std::string& why) {
  status = LemmaStatus::Skipped;
  reason = why;
}

std::string LemmaReport::to_json(bool pretty, bool timing) const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["mode"] = mode == LemmaMode::Universe ? "universe" : "targeted";
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) j["params"][k] = v;
  j["status"] = status == LemmaStatus::Pass ? "pass" : status == LemmaStatus::Fail ? "fail" : "skipped";
  if (status == LemmaStatus::Skipped) j["reason"] = reason;
  j["counterexamples"] = counterexamples;
  if (timing) j["elapsed_seconds"] = elapsed_seconds;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    arr.push_back(e);
  }
  j["checks"] = arr;
  j["notes"] = notes;
  return j.dump(pretty ? 2 : -1);
}

const std::vector<LemmaInfo>& lemma_registry() {
  static const std::vector<LemmaInfo> registry = {
      {"io-def", LemmaMode::Universe, "IO-graphs are defined by their small substructures", 0},
      {"io-char", LemmaMode::Universe, "IO-graphs are the disjoint unions of lines and circles", 0},
      {"circles-set", LemmaMode::Universe, "circles are the minimal IO-graphs with a unique lower cover containing I3 or O3", 1},
      {"loop-parts", LemmaMode::Universe, "triples (G, F, G+F) with G loop-full and F loop-free", 0},
      {"arrow-rel", LemmaMode::Targeted, "pairs (G, G -> l(G)) for loop-full G", 0},
      {"addition", LemmaMode::Targeted, "E_n + (L_m -> E_m) has loop-free part E_(n+m)", 0},
      {"same-size", LemmaMode::Universe, "pairs of digraphs with the same vertex count", 2},
      {"multiplication", LemmaMode::Targeted, "maximal equivalence with n classes of size m has nm vertices", 0},
      {"io-union", LemmaMode::Targeted, "G1 + (l(G2) -> G2) for IO-graphs G1, G2", 0},
      {"distinct-circles", LemmaMode::Universe, "disjoint unions of circles of different sizes", 1},
      {"counted-attach", LemmaMode::Targeted, "pairs (O*, G + O*) with |V(G)| circles in O*", 0},
      {"circle-count", LemmaMode::Targeted, "(E_i, O) where O has i circles", 0},
      {"gn-part", LemmaMode::Targeted, "components of G not embeddable into O*", 0},
      {"union-with-circles", LemmaMode::Targeted, "triples (O*, G, G + O*)", 0},
      {"male-rel", LemmaMode::Targeted, "circle gadgets with a two-vertex tail and their pairings", 0},
      {"attach-rel", LemmaMode::Targeted, "G attached to circles through pointer vertices", 0},
      {"support-rel", LemmaMode::Targeted, "edge-supporting construction conditions", 0},
      {"certificate", LemmaMode::Universe, "at most p vertices of loop-free degree at least q", 0},
      {"main-theorem", LemmaMode::Targeted, "encode/decode of embeddable digraphs", 0},
  };
  return registry;
}

const LemmaInfo& lemma_info(std::string_view id) {
  for (const auto& info : lemma_registry())
    if (info.id == id) return info;
  throw Error(Errc::UnknownLemma, "unknown lemma id '" + std::string(id) + "'");
}

LemmaReport verify_lemma(std::string_view id, int universe_bound, int margin, const Params& params) {
  using namespace detail;
  const LemmaInfo& info = lemma_info(id);
  if (info.mode != LemmaMode::Universe)
    throw Error(Errc::BadParams, "lemma '" + info.id + "' is targeted; use verify_targeted");
  if (universe_bound < 1 || universe_bound > kExtendedMaxLevel)
    throw Error(Errc::BadParams, "universe bound must be in 1.." + std::to_string(kExtendedMaxLevel));
  if (margin < 0) margin = info.default_margin;
  Params recorded = params;
  recorded["universe_n"] = std::to_string(universe_bound);
  recorded["margin"] = std::to_string(margin);
  return timed(info.id, info.mode, recorded, [&](LemmaReport& r) {
    if (universe_bound - margin < 1) {
      r.skip("bound " + std::to_string(universe_bound) + " minus margin " + std::to_string(margin) +
             " leaves no element to assert on");
      return;
    }
    const int b = universe_bound, m = margin;
    if (id == "io-def") lemma_io_def(r, b, m);
    else if (id == "io-char") lemma_io_char(r, b, m, params);
    else if (id == "circles-set") lemma_circles_set(r, b, m, params);
    else if (id == "loop-parts") lemma_loop_parts(r, b, m);
    else if (id == "same-size") lemma_same_size(r, b, m);
    else if (id == "distinct-circles") lemma_distinct_circles(r, b, m, params);
    else if (id == "certificate") lemma_certificate(r, b, m, params);
  });
}

LemmaReport verify_targeted(std::string_view id, const Params& params) {
  using namespace detail;
  const LemmaInfo& info = lemma_info(id);
  if (info.mode != LemmaMode::Targeted)
    throw Error(Errc::BadParams, "lemma '" + info.id + "' is universe-mode; use verify_lemma");
  return timed(info.id, info.mode, params, [&](LemmaReport& r) {
    if (id == "arrow-rel") lemma_arrow_rel(r, params);
    else if (id == "addition") lemma_addition(r, params);
    else if (id == "multiplication") lemma_multiplication(r, params);
    else if (id == "io-union") lemma_io_union(r, params);
    else if (id == "counted-attach") lemma_counted_attach(r, params);
    else if (id == "circle-count") lemma_circle_count(r, params);
    else if (id == "gn-part") lemma_gn_part(r, params);
    else if (id == "union-with-circles") lemma_union_with_circles(r, params);
    else if (id == "male-rel") lemma_male_rel(r, params);
    else if (id == "attach-rel") lemma_attach_rel(r, params);
    else if (id == "support-rel") lemma_support_rel(r, params);
    else if (id == "main-theorem") lemma_main_theorem(r, params);
  });
}

LemmaReport run_lemma(std::string_view id, int universe_bound, int margin, const Params& params) {
  if (lemma_info(id).mode == LemmaMode::Universe) return verify_lemma(id, universe_bound, margin, params);
  return verify_targeted(id, params);
}

}  // namespace dposet
