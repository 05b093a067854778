#include <doctest.h>

#include <algorithm>
#include <random>

#include "dposet/automorphisms.hpp"
#include "dposet/error.hpp"
#include "dposet/families.hpp"
#include "support/oracles.hpp"

using namespace dposet;

namespace {

Digraph named(const char* name) { return named_digraph(name); }

std::vector<TypePerm> all_perms() {
  std::vector<TypePerm> out;
  std::string letters = "ABCD";
  do out.push_back(parse_type_perm(letters));
  while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

std::vector<Coordinates> all_coordinates() {
  std::vector<Coordinates> out;
  for (int bits = 0; bits < 32; ++bits)
    for (const auto& pi : all_perms())
      out.push_back({bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1, pi, (bits >> 4) & 1});
  return out;
}

}  // namespace

TEST_CASE("generator examples") {
  CHECK(apply(rule_of_generator("phi1"), named("L1")) == named("E1"));
  CHECK(is_isomorphic(apply(rule_of_generator("phi2"), named("E2")), Digraph::from_edges(2, {{0, 1}, {1, 0}})));
  const Digraph a = disjoint_union(named("L1"), named("E1"));
  CHECK(is_isomorphic(apply(rule_of_generator("pi:(AB)"), a), l_arrow()));
  const Digraph edge = Digraph::from_edges(2, {{0, 1}});
  CHECK(is_isomorphic(apply(rule_of_generator("phi4"), edge), edge));
}

TEST_CASE("identity and involutions") {
  const LocalRule id = LocalRule::identity();
  const LocalRule phi1 = rule_of_generator("phi1");
  CHECK(compose(phi1, phi1) == id);
  for (const auto& c : shared_catalog(4).all()) {
    const Digraph g = c.to_digraph();
    CHECK(apply(id, g) == g);
    CHECK(apply(phi1, apply(phi1, g)) == g);
    CHECK(apply(phi1, g).size() == g.size());
  }
}

TEST_CASE("composition and inverse") {
  for (const auto& r : all_generators()) CHECK(compose(r, inverse(r)) == LocalRule::identity());
  const LocalRule phi1 = rule_of_generator("phi1"), phi2 = rule_of_generator("phi2");
  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) {
    const Digraph g = oracle::random_digraph(rng, 1 + static_cast<int>(rng() % 4));
    CHECK(apply(compose(phi1, phi2), g) == apply(phi2, apply(phi1, g)));
  }
}

TEST_CASE("type permutations") {
  CHECK(type_perm_name(parse_type_perm("(AB)(CD)")) == "BADC");
  CHECK(parse_type_perm("BACD") == parse_type_perm("(AB)"));
  CHECK_THROWS_AS(parse_type_perm("AABC"), Error);
  const TypePerm p = parse_type_perm("(ABC)");
  CHECK(compose_perm(p, compose_perm(p, p)) == parse_type_perm("ABCD"));
}

TEST_CASE("closure orders") {
  CHECK(closure({rule_of_generator("phi1")}).size() == 2);
  std::vector<LocalRule> pis;
  for (const auto& p : all_perms()) pis.push_back(pi_rule(p));
  CHECK(closure(pis).size() == 24);
  CHECK(closure(all_generators(true)).size() == 768);
  CHECK(closure(all_generators(false)).size() == 384);
}

TEST_CASE("coordinates are a bijection onto the closure with the semidirect law") {
  const auto group = closure(all_generators(true));
  std::set<LocalRule> images;
  for (const auto& c : all_coordinates()) {
    const LocalRule r = rule_of_coordinates(c);
    images.insert(r);
    const auto back = coordinates_of(r);
    REQUIRE(back);
    CHECK(*back == c);
  }
  CHECK(images == std::set<LocalRule>(group.begin(), group.end()));
  std::mt19937_64 rng(42);
  const auto coords = all_coordinates();
  for (int t = 0; t < 500; ++t) {
    const auto& a = coords[rng() % coords.size()];
    const auto& b = coords[rng() % coords.size()];
    // As maps, a*b applies b first.
    CHECK(rule_of_coordinates(multiply(a, b)) == compose(rule_of_coordinates(b), rule_of_coordinates(a)));
  }
}

TEST_CASE("verification of single rules") {
  const AutReport ok = verify_automorphism(rule_of_generator("phi1"), 4);
  CHECK(ok.passed());
  // Swap the images of A and B in one orientation only: still a bijection on
  // pair indices, but no longer compatible with swapping the two vertices.
  std::array<std::uint8_t, 16> pmap{};
  for (int i = 0; i < 16; ++i) pmap[i] = static_cast<std::uint8_t>(i);
  const int a = pair_index(true, false, false, false), b = pair_index(true, false, true, false);
  std::swap(pmap[a], pmap[b]);
  const LocalRule bad = LocalRule::unchecked({0, 1}, pmap);
  CHECK(rule_violation(bad));
  CHECK_THROWS_AS(LocalRule::from_tables({0, 1}, pmap), Error);
  const AutReport rep = verify_automorphism(bad, 3);
  CHECK_FALSE(rep.passed());
  bool witnessed = false;
  for (const auto& c : rep.checks) witnessed |= !c.pass && !c.witness.empty();
  CHECK(witnessed);
}

TEST_CASE("sampled closure elements pass at three vertices") {
  const auto group = closure(all_generators(true));
  const Poset& u = shared_poset(3, Order::Sub);
  std::mt19937_64 rng(43);
  for (int t = 0; t < 48; ++t) CHECK(verify_automorphism(group[rng() % group.size()], u).passed());
}

TEST_CASE("rule action is coherent with two-vertex types") {
  const auto group = closure(all_generators(true));
  const auto all = shared_catalog(4).all();
  std::mt19937_64 rng(44);
  for (int t = 0; t < 24; ++t) {
    const LocalRule& r = group[rng() % group.size()];
    for (int k = 0; k < 200; ++k) {
      const Digraph g = all[rng() % all.size()].to_digraph();
      const Digraph img = apply(r, g);
      CHECK(img.size() == g.size());
      if (g.size() < 2) continue;
      std::set<CanonCode> mapped;
      for (const auto& c : substructure_types(g, 2)) mapped.insert(apply_type(r, c));
      CHECK(substructure_types(img, 2) == mapped);
    }
  }
}

TEST_CASE("structure identities at three vertices") {
  const AutReport rep = verify_structure(3);
  CHECK(rep.passed());
  CHECK(rep.to_json().find("\"status\":\"pass\"") != std::string::npos);
}
