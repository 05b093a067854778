#include <doctest.h>

#include <bit>
#include <random>

#include "dposet/catalog.hpp"
#include "dposet/error.hpp"
#include "dposet/families.hpp"
#include "support/oracles.hpp"

using namespace dposet;

namespace {

Digraph named(const char* name) { return named_digraph(name); }
Digraph single_edge() { return Digraph::from_edges(2, {{0, 1}}); }
Digraph two_cycle() { return Digraph::from_edges(2, {{0, 1}, {1, 0}}); }
CanonCode code(const Digraph& g) { return canonical_form(g); }

}  // namespace

TEST_CASE("canonical form of small digraphs") {
  CHECK(code(named("E2")).text() == "2:0000");
  CHECK(code(named("L1")).text() == "1:1");
  CHECK(code(single_edge()).text() == "2:0010");
  CHECK(code(Digraph::from_edges(2, {{1, 0}})).text() == "2:0010");
}

TEST_CASE("canonical form matches the brute-force minimum") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const Digraph g = oracle::random_digraph(rng, n, 0.1 + 0.8 * (t % 5) / 4.0);
    CHECK(code(g).text() == oracle::brute_canon(g));
  }
}

TEST_CASE("canonical form is constant on relabelings") {
  std::mt19937_64 rng(12);
  const auto all = shared_catalog(4).all();
  for (int t = 0; t < 100; ++t) {
    const CanonCode c = all[rng() % all.size()];
    const Digraph g = c.to_digraph();
    const Digraph h = oracle::relabel(g, oracle::random_perm(rng, g.size()));
    CHECK(code(h) == c);
    CHECK(is_isomorphic(g, h));
  }
}

TEST_CASE("isomorphism examples") {
  const Digraph o3 = named("O3");
  CHECK(is_isomorphic(o3, unary_transform(o3, Transform::Reverse)));
  CHECK_FALSE(is_isomorphic(named("E2"), named("L2")));
  CHECK(is_isomorphic(named("male:4:0"), named("male:4:0")));
}

TEST_CASE("substructure examples") {
  CHECK(is_substructure(named("I2"), named("O3")));
  CHECK_FALSE(is_substructure(named("E2"), named("O3")));
  CHECK(is_substructure(named("O4"), named("O4")));
  CHECK_FALSE(is_substructure(named("O4"), named("O3")));
}

TEST_CASE("embeddability examples") {
  CHECK(is_embeddable(named("E2"), named("O3")));
  CHECK_FALSE(is_embeddable(two_cycle(), single_edge()));
  CHECK(is_embeddable(named("I2"), two_cycle()));
  CHECK_FALSE(is_substructure(named("I2"), two_cycle()));
}

TEST_CASE("witness maps realize the relation") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    const Digraph h = oracle::random_digraph(rng, 3 + static_cast<int>(rng() % 4));
    std::vector<int> keep;
    for (int v = 0; v < h.size(); ++v)
      if (rng() % 2) keep.push_back(v);
    if (keep.empty()) keep.push_back(0);
    const Digraph g = induced(h, keep);
    const auto m = find_substructure(g, h);
    REQUIRE(m);
    for (int a = 0; a < g.size(); ++a)
      for (int b = 0; b < g.size(); ++b) CHECK(g.edge(a, b) == h.edge((*m)[a], (*m)[b]));
    const auto e = find_embedding(g, h);
    REQUIRE(e);
    for (const auto& [a, b] : g.edges()) CHECK(h.edge((*e)[a], (*e)[b]));
  }
}

TEST_CASE("orders agree with the all-injections oracle on random pairs") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 2000; ++t) {
    const Digraph g = oracle::random_digraph(rng, 1 + static_cast<int>(rng() % 4), 0.3);
    const Digraph h = oracle::random_digraph(rng, 1 + static_cast<int>(rng() % 5), 0.5);
    CHECK(is_substructure(g, h) == oracle::brute_sub(g, h));
    CHECK(is_embeddable(g, h) == oracle::brute_emb(g, h));
  }
}

TEST_CASE("partial order laws on the three-vertex catalog") {
  std::vector<Digraph> gs;
  for (const auto& c : shared_catalog(3).all()) gs.push_back(c.to_digraph());
  for (std::size_t a = 0; a < gs.size(); ++a) {
    CHECK(is_substructure(gs[a], gs[a]));
    CHECK(is_embeddable(gs[a], gs[a]));
    for (std::size_t b = 0; b < gs.size(); ++b) {
      const bool sab = is_substructure(gs[a], gs[b]);
      const bool eab = is_embeddable(gs[a], gs[b]);
      if (sab) CHECK(eab);
      if (a != b) {
        CHECK_FALSE((sab && is_substructure(gs[b], gs[a])));
        CHECK_FALSE((eab && is_embeddable(gs[b], gs[a])));
      }
    }
  }
  // Transitivity on a seeded sample of triples.
  std::mt19937_64 rng(15);
  for (int t = 0; t < 20000; ++t) {
    const auto& x = gs[rng() % gs.size()];
    const auto& y = gs[rng() % gs.size()];
    const auto& z = gs[rng() % gs.size()];
    if (is_substructure(x, y) && is_substructure(y, z)) CHECK(is_substructure(x, z));
    if (is_embeddable(x, y) && is_embeddable(y, z)) CHECK(is_embeddable(x, z));
  }
}

TEST_CASE("induced restriction") {
  CHECK(code(induced(named("O3"), std::vector<int>{0, 1})) == code(single_edge()));
  const Digraph o4 = named("O4");
  CHECK(induced(o4, std::vector<int>{0, 1, 2, 3}) == o4);
  CHECK(induced(named("L3"), std::vector<int>{1}) == named("L1"));
  CHECK(induced_mask(o4, 0b0011) == single_edge());
}

TEST_CASE("one-vertex deletions") {
  CHECK(one_vertex_deletions(named("O3")) == std::set{code(single_edge())});
  CHECK(one_vertex_deletions(named("E3")) == std::set{code(named("E2"))});
  const Digraph a = disjoint_union(named("L1"), named("E1"));
  CHECK(one_vertex_deletions(a) == std::set{code(named("E1")), code(named("L1"))});
  for (int n = 3; n <= 8; ++n) CHECK(one_vertex_deletions(family(Family::O, n)) == std::set{code(family(Family::I, n - 1))});
}

TEST_CASE("disjoint union") {
  CHECK(disjoint_union(named("E1"), named("E1")) == named("E2"));
  const Digraph u = disjoint_union(named("O3"), named("O4"));
  CHECK(u.size() == 7);
  CHECK(u.edge_count() == 7);
  std::mt19937_64 rng(16);
  for (int t = 0; t < 50; ++t) {
    const Digraph g = oracle::random_digraph(rng, 1 + static_cast<int>(rng() % 4));
    const Digraph h = oracle::random_digraph(rng, 1 + static_cast<int>(rng() % 4));
    CHECK(code(disjoint_union(g, h)) == code(disjoint_union(h, g)));
  }
}

TEST_CASE("unary transforms") {
  CHECK(unary_transform(named("L1"), Transform::LoopExchange) == named("E1"));
  CHECK(is_isomorphic(unary_transform(single_edge(), Transform::Reverse), single_edge()));
  CHECK(unary_transform(named("E2"), Transform::Complement) == named("F2"));
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    const Digraph g = oracle::random_digraph(rng, 1 + static_cast<int>(rng() % 6));
    for (auto k : {Transform::LoopExchange, Transform::Reverse, Transform::Complement})
      CHECK(unary_transform(unary_transform(g, k), k) == g);
  }
}

TEST_CASE("transforms and the two orders") {
  std::vector<Digraph> gs;
  for (const auto& c : shared_catalog(3).all()) gs.push_back(c.to_digraph());
  auto l = [](const Digraph& g) { return unary_transform(g, Transform::LoopExchange); };
  auto t = [](const Digraph& g) { return unary_transform(g, Transform::Reverse); };
  auto c = [](const Digraph& g) { return unary_transform(g, Transform::Complement); };
  bool complement_breaks_emb = false;
  for (const auto& g : gs)
    for (const auto& h : gs) {
      const bool s = is_substructure(g, h);
      CHECK(is_substructure(l(g), l(h)) == s);
      CHECK(is_substructure(t(g), t(h)) == s);
      CHECK(is_substructure(c(g), c(h)) == s);
      const bool e = is_embeddable(g, h);
      CHECK(is_embeddable(t(g), t(h)) == e);
      if (e && !is_embeddable(c(g), c(h))) complement_breaks_emb = true;
    }
  CHECK(complement_breaks_emb);
}

TEST_CASE("loop parts") {
  const Digraph a = disjoint_union(named("L1"), named("E1"));
  CHECK(loop_part(a, LoopPart::Full) == named("L1"));
  CHECK_FALSE(loop_part(named("E3"), LoopPart::Full));
  CHECK(loop_part(l_arrow(), LoopPart::Free) == named("E1"));
  CHECK(loop_part(l_arrow(), LoopPart::Full) == named("L1"));
}

TEST_CASE("loop-free degree") {
  CHECK(loop_free_degree(named("I3"), 1) == 2);
  CHECK(loop_free_degree(named("L1"), 0) == 0);
  for (int v = 0; v < 3; ++v) CHECK(loop_free_degree(named("F3"), v) == 4);
  CHECK(loop_free_degree(l_arrow(), 0) == 1);
}

TEST_CASE("weakly connected components") {
  const auto parts = wccs(disjoint_union(named("O3"), named("O4")));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == named("O3"));
  CHECK(code(parts[1]) == code(named("O4")));
  CHECK(wccs(named("E3")) == std::vector<Digraph>(3, named("E1")));
  CHECK(wccs(l_arrow()) == std::vector<Digraph>{l_arrow()});
}

TEST_CASE("substructure types match subset-by-subset computation") {
  const std::set<CanonCode> o6{code(named("E3")), code(disjoint_union(named("I2"), named("E1"))), code(named("I3"))};
  CHECK(substructure_types(named("O6"), 3) == o6);
  CHECK(substructure_types(named("F2"), 1) == std::set{code(named("L1"))});
  std::mt19937_64 rng(18);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Digraph g = oracle::random_digraph(rng, n, 0.4);
    CHECK(substructure_types(g, n) == std::set{code(g)});
    const int k = 1 + static_cast<int>(rng() % n);
    std::set<std::string> expect, got;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m)
      if (std::popcount(m) == k) expect.insert(oracle::brute_canon(induced_mask(g, m)));
    for (const auto& c : substructure_types(g, k)) got.insert(c.text());
    CHECK(got == expect);
  }
}

TEST_CASE("IO-graphs") {
  CHECK(is_io(disjoint_union(named("I3"), named("O4"))));
  CHECK_FALSE(is_io(named("L1")));
  CHECK_FALSE(is_io(two_cycle()));
  // Closed under substructures.
  const Digraph c = circles({3, 4, 5});
  for (std::uint64_t m = 1; m <= c.all_mask(); ++m) CHECK(is_io(induced_mask(c, m)));
}

TEST_CASE("DGF round trip and errors") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 50; ++t) {
    const Digraph g = oracle::random_digraph(rng, 1 + static_cast<int>(rng() % 8));
    CHECK(parse_dgf(to_dgf(g)) == g);
  }
  CHECK(to_dgf(single_edge()) == "2\n01\n00\n");
  CHECK_THROWS_AS(parse_dgf("2\n01\n0\n"), Error);
  CHECK_THROWS_AS(parse_dgf("2\n01\n02\n"), Error);
  CHECK_THROWS_AS(parse_dgf("0\n"), Error);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Digraph(0), Error);
  CHECK_THROWS_AS(Digraph(65), Error);
  CHECK_NOTHROW(Digraph(64));
  CHECK_THROWS_AS(CanonCode::parse("2:000"), Error);
}
