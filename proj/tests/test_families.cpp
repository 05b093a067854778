#include <doctest.h>

#include <algorithm>
#include <random>

#include "dposet/error.hpp"
#include "dposet/families.hpp"

using namespace dposet;

TEST_CASE("family constructors") {
  const Digraph o3 = family(Family::O, 3);
  CHECK(o3 == Digraph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}}));
  CHECK(family(Family::E, 1) == family(Family::I, 1));
  const Digraph f2 = family(Family::F, 2);
  CHECK(f2.edge_count() == 4);
  CHECK(family(Family::L, 3).loop_count() == 3);
  CHECK(family(Family::I, 4).edge_count() == 3);
  CHECK_THROWS_AS(family(Family::O, 2), Error);
  CHECK_THROWS_AS(family(Family::E, 0), Error);
}

TEST_CASE("loop arrow") {
  const Digraph g = l_arrow();
  CHECK(loop_free_degree(g, 0) == 1);
  CHECK(loop_part(g, LoopPart::Full) == family(Family::L, 1));
  CHECK(is_substructure(g, g));
}

TEST_CASE("arrow link") {
  CHECK(is_isomorphic(arrow_link(family(Family::L, 1), ArrowDir::FullToFree), l_arrow()));
  const Digraph g = arrow_link(family(Family::L, 2), ArrowDir::FullToFree);
  CHECK(g.size() == 4);
  CHECK(g.edge_count() == 4);
  CHECK(g.loop_count() == 2);
  CHECK_THROWS_AS(arrow_link(family(Family::E, 2), ArrowDir::FullToFree), Error);
  CHECK(is_isomorphic(arrow_link(family(Family::E, 2), ArrowDir::FreeToFull), g));
}

TEST_CASE("male gadgets") {
  const Digraph m4 = male(4, Box::Plain);
  CHECK(m4.size() == 6);
  CHECK(m4.edge_count() == 6);
  const Digraph m3 = male(3, Box::Loop);
  CHECK(m3.size() == 5);
  CHECK(m3.edge_count() == 6);
  CHECK(m3.loop_count() == 1);
  for (int i = 3; i <= 8; ++i)
    for (Box box : {Box::Plain, Box::Loop}) {
      const Digraph m = male(i, box);
      CHECK(loop_free_degree(m, 0) == 3);
      for (int v = 1; v < m.size(); ++v)
        if (v != i + 1) CHECK(loop_free_degree(m, v) <= 2);
      CHECK(is_substructure(family(Family::O, i), m));
    }
}

TEST_CASE("male pairs") {
  const Digraph u = male_pair(4, Box::Plain, 5, Box::Plain, PairMode::Union);
  CHECK(u.size() == 13);
  CHECK(u.edge_count() == 13);
  const Digraph to = male_pair(4, Box::Loop, 5, Box::Plain, PairMode::To);
  CHECK(to.size() == 13);
  CHECK(to.edge_count() == 15);
  const Digraph to_plain = male_pair(4, Box::Plain, 5, Box::Plain, PairMode::To);
  const Digraph bi = male_pair(4, Box::Plain, 5, Box::Plain, PairMode::Bi);
  CHECK_FALSE(is_substructure(to_plain, bi));
  CHECK(is_embeddable(to_plain, bi));
  for (Box a : {Box::Plain, Box::Loop})
    for (Box b : {Box::Plain, Box::Loop})
      for (PairMode mode : {PairMode::Union, PairMode::To, PairMode::Bi})
        CHECK(is_substructure(male(4, a), male_pair(4, a, 6, b, mode)));
}

TEST_CASE("circles") {
  const Digraph c = circles({3, 4});
  CHECK(c.size() == 7);
  CHECK(c.edge_count() == 7);
  CHECK(is_io(circles({3, 4, 5})));
  CHECK_THROWS_AS(circles({3, 3}), Error);
  CHECK_THROWS_AS(circles({2, 4}), Error);
}

TEST_CASE("attach") {
  const Digraph e1 = family(Family::E, 1);
  const Digraph a = attach(e1, {{3}, {0}});
  CHECK(a.size() == 5);
  CHECK(a.edge_count() == 5);
  const Digraph l = attach(family(Family::L, 1), {{3}, {0}});
  CHECK(l.size() == 5);
  CHECK(l.edge_count() == 6);
  CHECK_THROWS_AS(attach(family(Family::E, 2), {{3}, {0}}), Error);
}

TEST_CASE("attach counts on random valid specs") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + static_cast<int>(rng() % 3);
    Digraph g(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (rng() % 2) g.set_edge(a, b);
    AttachSpec spec;
    int size = n * n + n + static_cast<int>(rng() % 3);
    for (int j = 0; j < n; ++j) spec.circle_sizes.push_back(size += 1 + static_cast<int>(rng() % 2));
    for (int j = 0; j < n; ++j) spec.alpha.push_back(j);
    std::shuffle(spec.alpha.begin(), spec.alpha.end(), rng);
    AttachLayout layout;
    const Digraph x = attach(g, spec, &layout);
    int circle_total = 0;
    for (int s : spec.circle_sizes) circle_total += s;
    CHECK(x.size() == n + circle_total + n);
    CHECK(x.edge_count() == g.edge_count() + circle_total + 2 * n);
    CHECK(layout.g_vertices == n);
    CHECK(induced(x, std::vector<int>(spec.alpha.begin(), spec.alpha.end())).size() == n);
  }
}

TEST_CASE("edge support construct") {
  const Digraph l1 = family(Family::L, 1);
  const SupportConstruct sc = edge_support(l1, {{3}, {4}, {0}, {0}});
  CHECK(sc.g_s.size() == 2);
  CHECK(sc.g_s.edge_count() == 3);
  CHECK(sc.total.size() == 11);
  CHECK(sc.total.edge_count() == 14);

  const Digraph e1 = family(Family::E, 1);
  const SupportConstruct se = edge_support(e1, {{3}, {}, {0}, {}});
  CHECK(se.total.size() == 5);
  CHECK(se.total == attach(e1, {{3}, {0}}));

  CHECK_THROWS_AS(edge_support(l1, {{2}, {4}, {0}, {0}}), Error);
  CHECK_THROWS_AS(edge_support(l1, {{3}, {}, {0}, {}}), Error);
}

TEST_CASE("edge support counts at default sizes") {
  for (const char* name : {"E1", "L1", "E2", "I2", "#2:0110", "#2:0011"}) {
    const Digraph g = named_digraph(name);
    const SupportSpec spec = default_support_spec(g);
    const SupportConstruct sc = edge_support(g, spec);
    const int n = g.size(), r = g.edge_count();
    int circle_total = 0;
    for (int s : sc.circle_sizes) circle_total += s;
    CHECK(sc.g_s.size() == n + r);
    CHECK(sc.total.size() == n + r + circle_total + n + r);
    CHECK(sc.total.edge_count() == sc.g_s.edge_count() + circle_total + 2 * (n + r));
    for (int l : spec.l_sizes) CHECK(l > n * n + n);
  }
}

TEST_CASE("edge support carries the male witnesses of every edge") {
  for (const char* name : {"I2", "L1", "#2:0110", "#2:1011"}) {
    const Digraph g = named_digraph(name);
    const SupportSpec spec = default_support_spec(g);
    const SupportConstruct sc = edge_support(g, spec);
    for (std::size_t e = 0; e < sc.edges.size(); ++e) {
      const auto [a, b] = sc.edges[e];
      const int ja = static_cast<int>(std::find(spec.alpha.begin(), spec.alpha.end(), a) - spec.alpha.begin());
      const int jb = static_cast<int>(std::find(spec.alpha.begin(), spec.alpha.end(), b) - spec.alpha.begin());
      const Box ba = g.loop(a) ? Box::Loop : Box::Plain;
      const Box bb = g.loop(b) ? Box::Loop : Box::Plain;
      const int d = spec.d_sizes[e];
      if (a == b) {
        CHECK(is_substructure(male_pair(spec.l_sizes[ja], ba, d, Box::Plain, PairMode::Bi), sc.total));
      } else {
        CHECK(is_substructure(male_pair(spec.l_sizes[ja], ba, d, Box::Plain, PairMode::To), sc.total));
        CHECK(is_substructure(male_pair(d, Box::Plain, spec.l_sizes[jb], bb, PairMode::To), sc.total));
      }
    }
  }
}

TEST_CASE("named constants") {
  CHECK(named_digraph("E3") == family(Family::E, 3));
  CHECK(named_digraph("Larrow") == l_arrow());
  CHECK(named_digraph("male:4:L") == male(4, Box::Loop));
  CHECK(is_isomorphic(named_digraph("#2:0010"), Digraph::from_edges(2, {{0, 1}})));
  CHECK_THROWS_AS(edge_support(named_digraph("F2"), default_support_spec(named_digraph("F2"))), Error);
  CHECK(is_constant_name("O5"));
  CHECK_FALSE(is_constant_name("Q7"));
  CHECK_THROWS_AS(named_digraph("nope"), Error);
}
