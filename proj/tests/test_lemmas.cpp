#include <doctest.h>

#include <algorithm>

#include <json.hpp>

#include "dposet/catalog.hpp"
#include "dposet/error.hpp"
#include "dposet/families.hpp"
#include "dposet/lemmas.hpp"

using namespace dposet;

namespace {

bool throws_code(Errc code, const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

}  // namespace

TEST_CASE("registry") {
  const auto& reg = lemma_registry();
  CHECK(reg.size() == 19);
  std::set<std::string> ids;
  for (const auto& info : reg) ids.insert(info.id);
  CHECK(ids.size() == 19);
  CHECK(lemma_info("io-def").mode == LemmaMode::Universe);
  CHECK(lemma_info("male-rel").mode == LemmaMode::Targeted);
  CHECK(lemma_info("same-size").default_margin == 2);
  CHECK(lemma_info("circles-set").default_margin == 1);
  CHECK(throws_code(Errc::UnknownLemma, [] { lemma_info("nope"); }));
  CHECK(throws_code(Errc::UnknownLemma, [] { run_lemma("nope"); }));
}

TEST_CASE("argument errors") {
  CHECK(throws_code(Errc::BadParams, [] { verify_lemma("addition"); }));
  CHECK(throws_code(Errc::BadParams, [] { verify_targeted("io-def"); }));
  CHECK(throws_code(Errc::BadParams, [] { verify_lemma("io-def", 0); }));
  CHECK(throws_code(Errc::BadParams, [] { verify_targeted("addition", {{"n", "two"}}); }));
  CHECK(throws_code(Errc::BadParams, [] { verify_targeted("male-rel", {{"i", "4"}, {"j", "4"}}); }));
  CHECK(throws_code(Errc::BadParams, [] { verify_targeted("attach-rel", {{"g", "Q1"}}); }));
}

TEST_CASE("insufficient bound is skipped with a reason") {
  const LemmaReport r = verify_lemma("same-size", 2);
  CHECK(r.status == LemmaStatus::Skipped);
  CHECK_FALSE(r.reason.empty());
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["status"] == "skipped");
  CHECK(j.contains("reason"));
}

TEST_CASE("failing checks always carry a counterexample") {
  LemmaReport r;
  r.check("fine", true);
  CHECK(r.passed());
  r.check("broken", false);
  CHECK(r.status == LemmaStatus::Fail);
  REQUIRE(r.counterexamples.size() == 1);
  CHECK(r.counterexamples[0] == std::vector<std::string>{"broken"});
  r.check("broken again", false, "", {"2:0010"});
  CHECK(r.counterexamples.back() == std::vector<std::string>{"2:0010"});
}

TEST_CASE("report JSON layout") {
  const LemmaReport r = verify_lemma("io-def", 3);
  const auto j = nlohmann::ordered_json::parse(r.to_json());
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"id", "mode", "params", "status", "counterexamples", "elapsed_seconds",
                                         "checks", "notes"});
  CHECK(j["status"] == "pass");
  const auto quiet = nlohmann::json::parse(r.to_json(false, false));
  CHECK_FALSE(quiet.contains("elapsed_seconds"));
  CHECK(r.to_json(false, false) == verify_lemma("io-def", 3).to_json(false, false));
}

TEST_CASE("universe lemmas pass at bound 3") {
  for (const auto& info : lemma_registry()) {
    if (info.mode != LemmaMode::Universe) continue;
    CAPTURE(info.id);
    const LemmaReport r = verify_lemma(info.id, 3);
    CHECK(r.status != LemmaStatus::Fail);
  }
}

TEST_CASE("certificate bound") {
  const LemmaReport r = verify_lemma("certificate", 4, 0, {{"p", "0"}, {"q", "2"}});
  CHECK(r.passed());
  bool noted = false;
  for (const auto& n : r.notes) noted |= n.find("(p+1)(q+1)") != std::string::npos;
  CHECK(noted);
}

TEST_CASE("targeted lemmas at small parameters") {
  CHECK(verify_targeted("addition", {{"n", "1"}, {"m", "2"}}).passed());
  CHECK(verify_targeted("multiplication", {{"n", "1"}, {"m", "3"}}).passed());
  CHECK(verify_targeted("circle-count", {{"min", "3"}, {"max", "5"}}).passed());
  CHECK(verify_targeted("io-union", {{"g1", "E1"}, {"g2", "E1"}}).passed());
  CHECK(verify_targeted("attach-rel", {{"g", "E1"}, {"sizes", "3"}}).passed());
  CHECK(verify_targeted("support-rel", {{"g", "@P"}}).passed());
  CHECK(verify_targeted("main-theorem", {{"g", "L1"}, {"samples", "100"}}).passed());
}

TEST_CASE("single male gadget is not unique past four circle vertices") {
  const LemmaReport loose = verify_targeted("male-rel");
  CHECK(loose.passed());
  CHECK_FALSE(loose.notes.empty());
  const LemmaReport strict = verify_targeted("male-rel", {{"strict", "1"}});
  CHECK(strict.status == LemmaStatus::Fail);
  CHECK_FALSE(strict.counterexamples.empty());
}

TEST_CASE("decode of the loop example") {
  const DecodeContext ctx(family(Family::L, 1), {{3}, {4}, {0}, {0}});
  const std::uint64_t full = ctx.construct.total.all_mask();
  const auto whole = decode(ctx, full);
  REQUIRE(whole);
  CHECK(*whole == family(Family::L, 1));

  // Support vertex of the loop gone: the vertex survives without its loop.
  const auto no_support = decode(ctx, full & ~bit(1));
  REQUIRE(no_support);
  CHECK(*no_support == family(Family::E, 1));

  // Vertex circle and pointer gone: nothing survives.
  std::uint64_t cut = full & ~bit(ctx.construct.layout.pointer[0]);
  for (int k = 0; k < 3; ++k) cut &= ~bit(ctx.construct.layout.circle_start[0] + k);
  CHECK_FALSE(decode(ctx, cut));

  CHECK(throws_code(Errc::BadSubset, [&] { decode(ctx, 0); }));
  CHECK(throws_code(Errc::BadSubset, [&] { decode(ctx, bit(20)); }));
}

TEST_CASE("decode of the full construct is exact on all small digraphs") {
  for (int n = 1; n <= 2; ++n)
    for (const auto& c : shared_catalog(2).levels[n - 1].members) {
      const Digraph g = c.to_digraph();
      if (g.edge_count() == 4) {
        // L' needs 2 + 4 + (7+8) + (9+10+11+12) + 6 = 69 vertices under any
        // valid size choice, beyond the 64-vertex capacity.
        CHECK(throws_code(Errc::TooLarge, [&] { DecodeContext(g, default_support_spec(g)); }));
        continue;
      }
      const DecodeContext ctx(g, default_support_spec(g));
      const auto got = decode(ctx, ctx.construct.total.all_mask());
      REQUIRE(got);
      CHECK(*got == g);
    }
}

TEST_CASE("forward witnesses decode to the kept part") {
  const Digraph g = Digraph::from_edges(2, {{0, 0}, {0, 1}, {1, 0}});
  const DecodeContext ctx(g, default_support_spec(g));
  const auto all_edges = ctx.construct.total.all_mask();
  CHECK(forward_witness(ctx, 0b11, 0b111) == all_edges);
  const auto only_loop = decode(ctx, forward_witness(ctx, 0b01, 0b111));
  REQUIRE(only_loop);
  CHECK(*only_loop == family(Family::L, 1));
  const auto edge_one_way = decode(ctx, forward_witness(ctx, 0b11, 0b010));
  REQUIRE(edge_one_way);
  CHECK(is_isomorphic(*edge_one_way, Digraph::from_edges(2, {{0, 1}})));
  CHECK(throws_code(Errc::BadSubset, [&] { forward_witness(ctx, 0b100, 0); }));
}

TEST_CASE("main theorem pipeline on the single edge") {
  const Digraph g = Digraph::from_edges(2, {{0, 1}});
  const LemmaReport r = verify_main_theorem(g, default_support_spec(g), 200, 5);
  CHECK(r.passed());
  bool three = false;
  for (const auto& c : r.checks) three |= c.detail == "3 type(s)";
  CHECK(three);
  CHECK(r.params.at("seed") == "5");
  CHECK(throws_code(Errc::BadParams, [] { verify_main_theorem(family(Family::E, 3), {}, 1, 1); }));
}

TEST_CASE("main theorem on a single vertex") {
  const Digraph g = family(Family::E, 1);
  const LemmaReport r = verify_main_theorem(g, default_support_spec(g), 50, 1);
  CHECK(r.passed());
  bool one = false;
  for (const auto& c : r.checks) one |= c.detail == "1 type(s)";
  CHECK(one);
}
