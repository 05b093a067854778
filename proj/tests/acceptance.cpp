// One line per acceptance criterion; exit status 1 if any criterion fails
// or exceeds its time limit.
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "dposet/automorphisms.hpp"
#include "dposet/catalog.hpp"
#include "dposet/families.hpp"
#include "dposet/fo.hpp"
#include "dposet/lemmas.hpp"
#include "support/oracles.hpp"

using namespace dposet;

namespace {

// Time limits in seconds.
constexpr double kCensusLimit = 60;
constexpr double kHasseLimit = 1;
constexpr double kOracleLimit = 300;
constexpr double kAutLimit = 300;
constexpr double kLemmaLimit = 600;
constexpr double kMainTheoremLimit = 600;
constexpr double kFoLimit = 60;

// Sample sizes and seeds.
constexpr int kOraclePairs = 1000000;
constexpr std::uint64_t kOracleSeed = 20240601;
constexpr int kMainSamples = 1000;
constexpr std::uint64_t kMainSeed = 1;
constexpr int kFoCases = 100;
constexpr std::uint64_t kFoSeed = 7;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs <= limit;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::ostringstream line;
  line << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << name << "  [" << o.detail
       << (in_time ? "" : "; over time") << "; " << std::fixed << std::setprecision(2) << secs << "s of " << limit
       << "s]";
  std::cout << line.str() << std::endl;
}

std::set<std::string> texts(const std::vector<CanonCode>& codes) {
  std::set<std::string> out;
  for (const auto& c : codes) out.insert(c.text());
  return out;
}

Outcome census() {
  const std::vector<std::size_t> want{2, 10, 104, 3044};
  std::ostringstream d;
  bool pass = true;
  for (int n = 1; n <= 4; ++n) {
    const Level level = enumerate_level(n);
    pass &= level.members.size() == want[n - 1];
    if (n >= 3) pass &= texts(level.members) == oracle::brute_level(n);
    d << (n > 1 ? "," : "sizes ") << level.members.size();
  }
  d << "; n=3,4 equal the matrix census";
  return {pass, d.str()};
}

Outcome hasse() {
  const Catalog c = build_catalog(2);
  std::set<std::string> above_e1, above_l1;
  for (const auto& p : c.sub_covers) {
    if (p.lower.text() == "1:0") above_e1.insert(p.upper.text());
    if (p.lower.text() == "1:1") above_l1.insert(p.upper.text());
  }
  // E P E' A B C D and A B C D L Q L'.
  const std::set<std::string> e1{"2:0000", "2:0010", "2:0110", "2:0001", "2:0011", "2:0101", "2:0111"};
  const std::set<std::string> l1{"2:0001", "2:0011", "2:0101", "2:0111", "2:1001", "2:1011", "2:1111"};
  const bool pass = c.sub_covers.size() == 14 && above_e1 == e1 && above_l1 == l1;
  return {pass, std::to_string(c.sub_covers.size()) + " cover edges, 7 above each 1-vertex type"};
}

Outcome oracle_equivalence() {
  const auto all = shared_catalog(4).all();
  std::vector<Digraph> gs;
  for (const auto& c : all) gs.push_back(c.to_digraph());
  long long mismatches = 0, checked = 0;
  auto compare = [&](const Digraph& g, const Digraph& h) {
    mismatches += is_substructure(g, h) != oracle::brute_sub(g, h);
    mismatches += is_embeddable(g, h) != oracle::brute_emb(g, h);
    ++checked;
  };
  std::size_t small = 0;
  while (small < gs.size() && gs[small].size() <= 3) ++small;
  for (std::size_t a = 0; a < small; ++a)
    for (std::size_t b = 0; b < small; ++b) compare(gs[a], gs[b]);
  std::mt19937_64 rng(kOracleSeed);
  for (int t = 0; t < kOraclePairs; ++t) compare(gs[rng() % gs.size()], gs[rng() % gs.size()]);
  return {mismatches == 0, std::to_string(checked) + " pairs (" + std::to_string(small * small) +
                               " exhaustive up to 3 vertices), " + std::to_string(mismatches) + " mismatches"};
}

Outcome automorphisms() {
  const auto gens = all_generators(true);
  const auto group = closure(gens);
  const auto sub = closure(all_generators(false));
  int bad = 0;
  const Poset& u3 = shared_poset(3, Order::Sub);
  const Poset& u4 = shared_poset(4, Order::Sub);
  for (const auto& r : group) bad += !verify_automorphism(r, u3).passed();
  for (const auto& r : gens) bad += !verify_automorphism(r, u3).passed() + !verify_automorphism(r, u4).passed();
  const AutReport structure = verify_structure(4);
  int structure_bad = 0;
  for (const auto& c : structure.checks) structure_bad += !c.pass;
  const bool pass = group.size() == 768 && sub.size() == 384 && bad == 0 && structure.passed();
  return {pass, "order " + std::to_string(group.size()) + ", without phi1 " + std::to_string(sub.size()) + ", " +
                    std::to_string(bad) + " rule failures, " + std::to_string(structure.checks.size()) +
                    " identities with " + std::to_string(structure_bad) + " failures"};
}

Outcome lemmas() {
  int pass_count = 0, total = 0;
  std::size_t counterexamples = 0;
  std::string failed;
  for (const auto& info : lemma_registry()) {
    const LemmaReport r = run_lemma(info.id);
    ++total;
    counterexamples += r.counterexamples.size();
    if (r.passed()) ++pass_count;
    else failed += " " + info.id;
  }
  return {pass_count == total && counterexamples == 0,
          std::to_string(pass_count) + "/" + std::to_string(total) + " lemmas pass, " +
              std::to_string(counterexamples) + " counterexamples" + (failed.empty() ? "" : ", failed:" + failed)};
}

Outcome main_theorem() {
  const std::vector<std::pair<std::string, Digraph>> graphs{
      {"E1", family(Family::E, 1)},
      {"L1", family(Family::L, 1)},
      {"E2", family(Family::E, 2)},
      {"edge", Digraph::from_edges(2, {{0, 1}})},
      {"2-cycle", Digraph::from_edges(2, {{0, 1}, {1, 0}})},
      {"L1+E1", disjoint_union(family(Family::L, 1), family(Family::E, 1))},
  };
  std::string detail, failed;
  for (const auto& [name, g] : graphs) {
    const LemmaReport r = verify_main_theorem(g, default_support_spec(g), kMainSamples, kMainSeed);
    if (!r.passed()) failed += " " + name;
  }
  return {failed.empty(), std::to_string(graphs.size()) + " digraphs, " + std::to_string(kMainSamples) +
                              " samples each, seed " + std::to_string(kMainSeed) +
                              (failed.empty() ? "" : ", failed:" + failed)};
}

Outcome fo_semantics() {
  std::ifstream in(std::string(DPOSET_TEST_DATA) + "/fo_corpus.txt");
  int corpus = 0, round_trip = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    ++corpus;
    const auto f = fo::parse(line);
    round_trip += *fo::parse(fo::print(*f)) == *f;
  }
  std::mt19937_64 rng(kFoSeed);
  const std::vector<std::string> constants{"E1", "L1", "I2", "#2:0110", "E2", "O3"};
  int agree = 0;
  for (int t = 0; t < kFoCases; ++t) {
    const Order order = t % 2 ? Order::Emb : Order::Sub;
    const Poset& u = shared_poset(3, order);
    std::vector<Digraph> elements;
    for (const auto& c : u.elements()) elements.push_back(c.to_digraph());
    const auto f = oracle::random_formula(rng, 3, {"x"}, constants);
    const CanonCode x = u.element(static_cast<int>(rng() % u.size()));
    agree += fo::evaluate(*f, u, {{"x", x}}) ==
             oracle::naive_eval(*f, elements, order == Order::Emb, {{"x", x.to_digraph()}});
  }
  const auto minimal = fo::defined_set(*fo::parse("~ exists y. y < x"), shared_poset(4, Order::Sub));
  const bool minimal_ok = texts(minimal) == std::set<std::string>{"1:0", "1:1"};
  return {corpus == 50 && round_trip == 50 && agree == kFoCases && minimal_ok,
          std::to_string(round_trip) + "/" + std::to_string(corpus) + " round trips, " + std::to_string(agree) + "/" +
              std::to_string(kFoCases) + " evaluator agreements, minimal elements " +
              (minimal_ok ? "{E1, L1}" : "wrong")};
}

}  // namespace

int main() {
  criterion(1, "level census", kCensusLimit, census);
  criterion(2, "Hasse levels 1-2", kHasseLimit, hasse);
  criterion(3, "order oracle equivalence", kOracleLimit, oracle_equivalence);
  criterion(4, "automorphism suite", kAutLimit, automorphisms);
  criterion(5, "lemma registry", kLemmaLimit, lemmas);
  criterion(6, "main theorem desk scale", kMainTheoremLimit, main_theorem);
  criterion(7, "formula round trip and semantics", kFoLimit, fo_semantics);
  std::cout << (failures ? "acceptance: FAIL (" + std::to_string(failures) + " criteria)" : "acceptance: PASS")
            << std::endl;
  return failures ? 1 : 0;
}
