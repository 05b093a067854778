#include <algorithm>
#include <bit>
#include <map>

#include "dposet/error.hpp"
#include "lemma_support.hpp"

namespace dposet::detail {

namespace {

std::vector<Digraph> members_upto(int bound) {
  std::vector<Digraph> out;
  for (const auto& level : shared_catalog(std::max(bound, 1)).levels) {
    if (level.n > bound) break;
    for (const auto& c : level.members) out.push_back(c.to_digraph());
  }
  return out;
}

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : " ") + x;
  return out;
}

void expect_set(LemmaReport& r, const std::string& name, const std::set<std::string>& got,
                const std::set<std::string>& want) {
  if (got == want) {
    r.check(name, true, std::to_string(got.size()) + " type(s)");
    return;
  }
  std::vector<std::string> diff;
  std::set_symmetric_difference(got.begin(), got.end(), want.begin(), want.end(), std::back_inserter(diff));
  r.check(name, false, "found {" + join(got) + "} expected {" + join(want) + "}", diff);
}

bool has_mixed_edge_type_other_than(const Digraph& x, const CanonCode& allowed) {
  if (x.size() < 2) return false;
  for (const auto& t : substructure_types(x, 2))
    if ((t == pair_code("B") || t == pair_code("C") || t == pair_code("D")) && t != allowed) return true;
  return false;
}

}  // namespace

// (G, G -> l(G)) for loop-full G: every Z meeting the conditions with
// loop-full part G is G -> l(G).
void lemma_arrow_rel(LemmaReport& r, const Params& p) {
  const int max_n = param_int(p, "max_n", 2);
  if (max_n < 1 || max_n > 2) throw Error(Errc::BadParams, "arrow-rel supports max_n in 1..2");
  const auto pictures = arrow_pictures();
  const auto squares = asymmetric_squares();
  const CanonCode b_type = pair_code("B");
  r.notes.push_back("cross pairs other than loop -> plain are pruned: they form a forbidden two-vertex type");

  for (const auto& g : members_upto(max_n)) {
    if (g.loop_count() != g.size()) continue;
    const int n = g.size();
    const Digraph g_plus = disjoint_union(g, family(Family::E, 1));
    std::set<std::string> found;
    for (int m = std::max(1, n - 1); m <= n + 1; ++m) {
      const int inner_bits = m * (m - 1), cross_bits = n * m;
      for (std::uint64_t inner = 0; inner < (std::uint64_t{1} << inner_bits); ++inner)
        for (std::uint64_t cross = 0; cross < (std::uint64_t{1} << cross_bits); ++cross) {
          Digraph z(n + m);
          for (auto [u, v] : g.edges()) z.set_edge(u, v);
          int bit = 0;
          for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
              if (a != b && ((inner >> bit++) & 1)) z.set_edge(n + a, n + b);
          bit = 0;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < m; ++b)
              if ((cross >> bit++) & 1) z.set_edge(a, n + b);
          if (has_mixed_edge_type_other_than(z, b_type)) continue;
          const Digraph y = *loop_part(z, LoopPart::Free);
          if (sub(g_plus, z) || sub(disjoint_union(y, family(Family::L, 1)), z)) continue;
          bool bad = false;
          for (const auto& t : small_types(z, 4))
            if (pictures.count(t) || squares.count(t)) bad = true;
          if (!bad) found.insert(code_of(z));
        }
    }
    const Digraph want = arrow_link(g, ArrowDir::FullToFree);
    expect_set(r, "unique witness for " + code_of(g), found, {code_of(want)});
    // The loop -> plain edges of the witness match the two parts bijectively.
    bool bijection = true;
    for (int v = 0; v < n; ++v) {
      const std::uint64_t plain_out = want.out_mask(v) & ~want.loop_mask();
      bijection &= std::popcount(plain_out) == 1;
    }
    for (int v = n; v < 2 * n; ++v) bijection &= std::popcount(want.in_mask(v) & want.loop_mask()) == 1;
    r.check("arrow edges form a bijection for " + code_of(g), bijection);
    r.check("loop-free part of witness is l(G) for " + code_of(g),
            is_isomorphic(*loop_part(want, LoopPart::Free), unary_transform(g, Transform::LoopExchange)));
  }
}

namespace {

struct AdditionBullets {
  int n, m;
  Digraph en_lm, lm_em, two_plain, en1_lm;
  std::set<CanonCode> edge_types_forbidden;

  AdditionBullets(int n_, int m_)
      : n(n_), m(m_),
        en_lm(disjoint_union(family(Family::E, n_), family(Family::L, m_))),
        lm_em(arrow_link(family(Family::L, m_), ArrowDir::FullToFree)),
        two_plain(loop_to_two_plain()),
        en1_lm(disjoint_union(family(Family::E, n_ + 1), family(Family::L, m_))) {
    for (auto t : {"P", "E'", "C", "D", "Q", "L'"}) edge_types_forbidden.insert(pair_code(t));
  }

  // Returns the loop-free part size when every bullet holds.
  std::optional<int> holds(const Digraph& x) const {
    if (!sub(en_lm, x) || !sub(lm_em, x) || sub(two_plain, x) || sub(en1_lm, x)) return std::nullopt;
    for (const auto& t : substructure_types(x, 2))
      if (edge_types_forbidden.count(t)) return std::nullopt;
    auto full = loop_part(x, LoopPart::Full), free = loop_part(x, LoopPart::Free);
    if (!full || !free) return std::nullopt;
    if (!is_isomorphic(*full, family(Family::L, m))) return std::nullopt;
    if (free->edge_count() != 0) return std::nullopt;
    return free->size();
  }
};

}  // namespace

void lemma_addition(LemmaReport& r, const Params& p) {
  const int n = param_int(p, "n", 2), m = param_int(p, "m", 3);
  if (n < 1 || m < 1 || n + 3 * m > 14) throw Error(Errc::BadParams, "addition needs n, m >= 1 and n + 3m <= 14");
  r.params["n"] = std::to_string(n);
  r.params["m"] = std::to_string(m);
  const AdditionBullets bullets(n, m);
  const Digraph witness = disjoint_union(family(Family::E, n), arrow_link(family(Family::L, m), ArrowDir::FullToFree));
  const auto i = bullets.holds(witness);
  r.check("constructed witness meets every condition", i.has_value(), code_of(witness));
  r.check("loop-free part of the witness is E_(n+m)", i && *i == n + m, i ? "i = " + std::to_string(*i) : "");

  // Each looped vertex points to at most one plain vertex and there are no
  // other edges (the excluded two- and three-vertex patterns force this).
  std::set<std::string> found;
  std::set<int> sizes;
  for (int plain = 1; plain <= n + m + 2; ++plain) {
    std::vector<int> f(m, 0);  // 0 = no edge, k = edge to plain vertex k-1
    while (true) {
      Digraph x(m + plain);
      for (int a = 0; a < m; ++a) {
        x.set_edge(a, a);
        if (f[a]) x.set_edge(a, m + f[a] - 1);
      }
      if (auto got = bullets.holds(x)) {
        found.insert(code_of(x));
        sizes.insert(*got);
      }
      int k = 0;
      while (k < m && ++f[k] > plain) f[k++] = 0;
      if (k == m) break;
    }
  }
  expect_set(r, "search finds the witness only", found, {code_of(witness)});
  r.check("every solution has i = n+m", sizes == std::set<int>{n + m});

  // Unrestricted check over the whole catalog for small instances.
  for (int n2 = 1; n2 <= 2; ++n2)
    for (int m2 = 1; n2 + 2 * m2 <= 4; ++m2) {
      const AdditionBullets small(n2, m2);
      std::set<std::string> got;
      for (const auto& x : members_upto(4))
        if (small.holds(x)) got.insert(code_of(x));
      const Digraph w = disjoint_union(family(Family::E, n2), arrow_link(family(Family::L, m2), ArrowDir::FullToFree));
      expect_set(r, "catalog solutions for n=" + std::to_string(n2) + ", m=" + std::to_string(m2), got, {code_of(w)});
    }
}

namespace {

bool multiplication_conditions(const Digraph& x, int n, int m, const Digraph& fig4) {
  if (x.loop_count() != x.size()) return false;                    // E1 not below
  if (x.size() >= 2 && sub(pair_type("Q"), x)) return false;        // symmetric
  if (x.size() >= 3 && sub(fig4, x)) return false;                  // transitive
  if (!sub(family(Family::L, n), x) || sub(family(Family::L, n + 1), x)) return false;
  if (!sub(family(Family::F, m), x) || sub(family(Family::F, m + 1), x)) return false;
  return true;
}

}  // namespace

void lemma_multiplication(LemmaReport& r, const Params& p) {
  const int n = param_int(p, "n", 2), m = param_int(p, "m", 2);
  if (n < 1 || m < 1 || n * m > 5) throw Error(Errc::BadParams, "multiplication needs n, m >= 1 and nm <= 5");
  r.params["n"] = std::to_string(n);
  r.params["m"] = std::to_string(m);
  const Digraph fig4 = Digraph::from_edges(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 0}, {1, 2}, {2, 1}});
  r.notes.push_back("search ranges over symmetric loop-full digraphs; the first two conditions exclude the rest");

  std::map<int, std::set<std::string>> by_size;
  for (int k = 1; k <= n * m + 1; ++k) {
    const int pairs = k * (k - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      Digraph x(k);
      for (int v = 0; v < k; ++v) x.set_edge(v, v);
      int bit = 0;
      for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
          if ((mask >> bit++) & 1) {
            x.set_edge(a, b);
            x.set_edge(b, a);
          }
      if (multiplication_conditions(x, n, m, fig4)) by_size[k].insert(code_of(x));
    }
  }
  const int largest = by_size.empty() ? 0 : by_size.rbegin()->first;
  r.check("maximal solution has nm vertices", largest == n * m, "largest " + std::to_string(largest));
  Digraph classes = family(Family::F, m);
  for (int c = 1; c < n; ++c) classes = disjoint_union(classes, family(Family::F, m));
  expect_set(r, "maximal solution is n copies of F_m", by_size[n * m], {code_of(classes)});

  // Unrestricted cross-check on the catalog.
  std::set<std::string> catalog_hits, symmetric_hits;
  for (const auto& x : members_upto(4))
    if (multiplication_conditions(x, n, m, fig4)) catalog_hits.insert(code_of(x));
  for (const auto& [k, s] : by_size)
    if (k <= 4) symmetric_hits.insert(s.begin(), s.end());
  expect_set(r, "catalog solutions agree with the symmetric search", catalog_hits, symmetric_hits);
}

void lemma_io_union(LemmaReport& r, const Params& p) {
  std::vector<std::pair<std::string, std::string>> pairs;
  if (p.count("g1") || p.count("g2"))
    pairs.emplace_back(param_str(p, "g1", "E1"), param_str(p, "g2", "I2"));
  else
    pairs = {{"E1", "E1"}, {"E1", "I2"}, {"I2", "E1"}, {"I2", "I2"}, {"E2", "I2"}};
  const Digraph fig6 = arrow_link(pair_type("Q"), ArrowDir::FullToFree);
  const Digraph e_prime = pair_type("E'");
  const Digraph i2 = family(Family::I, 2), larrow = l_arrow();
  r.notes.push_back("search adds every edge set between G1 and l(G2) -> G2 to the witness");

  for (const auto& [n1, n2] : pairs) {
    const Digraph g1 = param_graph(n1), g2 = param_graph(n2);
    if (!is_io(g1) || !is_io(g2)) throw Error(Errc::BadParams, "io-union needs IO-graphs");
    if (g2.size() > 2 || g1.size() > 2) throw Error(Errc::BadParams, "io-union supports graphs with at most 2 vertices");
    const Digraph lg2 = unary_transform(g2, Transform::LoopExchange);
    const Digraph link = arrow_link(g2, ArrowDir::FreeToFull);
    const Digraph g1_lg2 = disjoint_union(g1, lg2);
    const std::string label = n1 + "/" + n2;

    // Excluded shapes: |G2|+2 vertices above l(G2) with I2 and L-> inside but
    // not containing the arrow square.
    std::vector<Digraph> excluded;
    for (const auto& y : members_upto(g2.size() + 2))
      if (y.size() == g2.size() + 2 && sub(lg2, y) && sub(i2, y) && sub(larrow, y) && !sub(fig6, y))
        excluded.push_back(y);

    auto holds = [&](const Digraph& x) {
      if (x.size() != g1.size() + 2 * g2.size()) return false;
      if (sub(e_prime, x)) return false;
      if (!sub(g1_lg2, x) || !sub(link, x)) return false;
      for (const auto& y : excluded)
        if (sub(y, x)) return false;
      return true;
    };

    const Digraph witness = disjoint_union(g1, link);
    r.check("witness meets the conditions for " + label, holds(witness), code_of(witness));
    r.check("loop-free part of witness is G1+G2 for " + label,
            is_isomorphic(*loop_part(witness, LoopPart::Free), disjoint_union(g1, g2)));

    const int a = g1.size(), b = 2 * g2.size();
    const int bits = 2 * a * b;
    std::set<std::string> found;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
      Digraph x = witness;
      int bit = 0;
      for (int u = 0; u < a; ++u)
        for (int v = a; v < a + b; ++v) {
          if ((mask >> bit++) & 1) x.set_edge(u, v);
          if ((mask >> bit++) & 1) x.set_edge(v, u);
        }
      if (holds(x)) found.insert(code_of(x));
    }
    expect_set(r, "cross edges are excluded for " + label, found, {code_of(witness)});
  }
}

namespace {

// Bullets for (O*, X) with i = number of circles.
struct CountedAttach {
  Digraph o_star;
  int i;
  int smallest;

  bool bad_extension(const Digraph& y) const {
    if (!sub(o_star, y)) return false;
    if (y.loop_count() == 0) return !is_io(y);
    for (const auto& t : substructure_types(y, 2))
      if (t == pair_code("B") || t == pair_code("C") || t == pair_code("D")) return true;
    return false;
  }

  bool holds(const Digraph& x, std::string* failed = nullptr) const {
    auto fail = [&](const char* why) {
      if (failed) *failed = why;
      return false;
    };
    if (x.size() != o_star.size() + i) return fail("size");
    if (smallest < i + 1) return fail("smallest circle");
    if (!sub(o_star, x)) return fail("O* not below");
    // Every substructure with |O*|+1 vertices: choose the vertices to drop.
    std::vector<int> drop(i - 1);
    for (int k = 0; k < i - 1; ++k) drop[k] = k;
    while (true) {
      std::uint64_t keep = x.all_mask();
      for (int d : drop) keep &= ~(std::uint64_t{1} << d);
      if (bad_extension(induced_mask(x, keep))) return fail("forbidden extension");
      int k = i - 2;
      while (k >= 0 && drop[k] == x.size() - (i - 1) + k) --k;
      if (k < 0) break;
      ++drop[k];
      for (int t = k + 1; t < i - 1; ++t) drop[t] = drop[t - 1] + 1;
    }
    return true;
  }
};

}  // namespace

void lemma_counted_attach(LemmaReport& r, const Params& p) {
  (void)p;
  // One circle, one extra vertex: the whole catalog level.
  {
    const CountedAttach c{family(Family::O, 3), 1, 3};
    std::set<std::string> found;
    for (const auto& x : members_upto(4))
      if (x.size() == 4 && c.holds(x)) found.insert(code_of(x));
    std::set<std::string> want;
    for (const auto& g : members_upto(1)) want.insert(code_of(disjoint_union(g, c.o_star)));
    expect_set(r, "O3: solutions are G + O3", found, want);
  }
  // Two circles, two extra vertices: single extensions first, then pairs.
  {
    const CountedAttach c{circles({3, 4}), 2, 3};
    const int base = c.o_star.size();
    struct Ext {
      bool loop;
      std::uint64_t out, in;
    };
    std::vector<Ext> survivors;
    for (int loop = 0; loop < 2; ++loop)
      for (std::uint64_t out = 0; out < (std::uint64_t{1} << base); ++out)
        for (std::uint64_t in = 0; in < (std::uint64_t{1} << base); ++in) {
          Digraph y(base + 1);
          for (auto [u, v] : c.o_star.edges()) y.set_edge(u, v);
          if (loop) y.set_edge(base, base);
          for (int v = 0; v < base; ++v) {
            if ((out >> v) & 1) y.set_edge(base, v);
            if ((in >> v) & 1) y.set_edge(v, base);
          }
          if (!c.bad_extension(y)) survivors.push_back({loop != 0, out, in});
        }
    r.check("single extensions of O3+O4 are isolated vertices", survivors.size() == 2,
            std::to_string(survivors.size()) + " survivor(s)");
    std::set<std::string> found;
    for (const auto& e1 : survivors)
      for (const auto& e2 : survivors)
        for (int between = 0; between < 4; ++between) {
          Digraph x(base + 2);
          for (auto [u, v] : c.o_star.edges()) x.set_edge(u, v);
          const Ext* ext[2] = {&e1, &e2};
          for (int k = 0; k < 2; ++k) {
            const int w = base + k;
            if (ext[k]->loop) x.set_edge(w, w);
            for (int v = 0; v < base; ++v) {
              if ((ext[k]->out >> v) & 1) x.set_edge(w, v);
              if ((ext[k]->in >> v) & 1) x.set_edge(v, w);
            }
          }
          if (between & 1) x.set_edge(base, base + 1);
          if (between & 2) x.set_edge(base + 1, base);
          if (c.holds(x)) found.insert(code_of(x));
        }
    std::set<std::string> want;
    for (const auto& g : members_upto(2))
      if (g.size() == 2) want.insert(code_of(disjoint_union(g, c.o_star)));
    expect_set(r, "O3+O4: solutions are G + O*", found, want);
  }
  // Constructions with the stricter circle bound, plus negative controls.
  for (const auto& g : members_upto(2)) {
    const int n = g.size();
    std::vector<int> sizes;
    for (int k = 0; k < n; ++k) sizes.push_back(n * n + n + 1 + k);
    const CountedAttach c{circles(sizes), n, sizes[0]};
    const Digraph x = disjoint_union(g, c.o_star);
    std::string why;
    r.check("G + O* meets the conditions for " + code_of(g), c.holds(x, &why), why);

    Digraph bad = x;  // loop on vertex 0 with an edge into the first circle
    bad.set_edge(0, 0);
    bad.set_edge(0, n);
    r.check("loop -> circle edge is rejected for " + code_of(g), !c.holds(bad), "", {code_of(bad)});
    Digraph bad2 = x;  // plain vertex joined to a circle
    bad2.set_edge(0, 0, false);
    bad2.set_edge(n, 0);
    r.check("plain vertex on a circle is rejected for " + code_of(g), !c.holds(bad2), "", {code_of(bad2)});
  }
}

void lemma_circle_count(LemmaReport& r, const Params& p) {
  const int lo = param_int(p, "min", 3), hi = param_int(p, "max", 6);
  if (lo < 3 || hi < lo || hi > 7) throw Error(Errc::BadParams, "circle-count needs 3 <= min <= max <= 7");
  const int span = hi - lo + 1;
  for (int mask = 1; mask < (1 << span); ++mask) {
    std::vector<int> sizes;
    for (int k = 0; k < span; ++k)
      if ((mask >> k) & 1) sizes.push_back(lo + k);
    const Digraph o = circles(sizes);
    const int n = o.size();
    auto circle_free = [&](const Digraph& y) {
      for (int k = 3; k <= y.size(); ++k)
        if (sub(family(Family::O, k), y)) return false;
      return true;
    };
    // Largest circle-free substructure, by decreasing size.
    int best = 0;
    for (int drop = 1; drop <= n && !best; ++drop) {
      std::vector<int> pick(drop);
      for (int k = 0; k < drop; ++k) pick[k] = k;
      while (true) {
        std::uint64_t keep = o.all_mask();
        for (int d : pick) keep &= ~(std::uint64_t{1} << d);
        if (keep && circle_free(induced_mask(o, keep))) {
          best = n - drop;
          break;
        }
        int k = drop - 1;
        while (k >= 0 && pick[k] == n - drop + k) --k;
        if (k < 0) break;
        ++pick[k];
        for (int t = k + 1; t < drop; ++t) pick[t] = pick[t - 1] + 1;
      }
    }
    const int i = n - best;
    std::string label;
    for (int s : sizes) label += (label.empty() ? "" : ":") + std::to_string(s);
    r.check("circles " + label + " give E_" + std::to_string(sizes.size()), i == static_cast<int>(sizes.size()),
            "i = " + std::to_string(i), {code_of(o)});
  }
}

namespace {

// Components of G not embeddable into O*, or nothing.
std::optional<Digraph> gn_direct(const Digraph& g, const Digraph& o_star) {
  std::optional<Digraph> out;
  for (const auto& c : wccs(g))
    if (!is_embeddable(c, o_star)) out = out ? disjoint_union(*out, c) : c;
  return out;
}

}  // namespace

void lemma_gn_part(LemmaReport& r, const Params& p) {
  const auto sizes = param_ints(p, "sizes", {5, 6, 7, 8});
  const int max_n = param_int(p, "max_n", 4);
  if (max_n < 1 || max_n > 4) throw Error(Errc::BadParams, "gn-part supports max_n in 1..4");
  Digraph o_star(1);
  try {
    o_star = circles(sizes);
  } catch (const Error& e) {
    throw Error(Errc::BadParams, e.what());
  }
  r.notes.push_back("the size condition ranges over all X with fewer vertices than the candidate, the empty one included");
  const auto small = members_upto(max_n - 1);
  std::map<std::string, bool> size_condition;
  auto third = [&](const Digraph& h) {
    const std::string key = code_of(h);
    auto it = size_condition.find(key);
    if (it != size_condition.end()) return it->second;
    bool ok = !sub(h, o_star);  // X may be empty
    for (const auto& x : small)
      if (x.size() < h.size() && sub(h, disjoint_union(x, o_star))) {
        ok = false;
        break;
      }
    return size_condition[key] = ok;
  };

  int mismatches = 0, checked = 0;
  for (const auto& g : members_upto(max_n)) {
    std::map<std::string, Digraph> candidates;
    for (std::uint64_t s = 1; s <= g.all_mask(); ++s) {
      Digraph h = induced_mask(g, s);
      if (third(h)) candidates.emplace(code_of(h), h);
    }
    std::set<std::string> maximal;
    for (const auto& [ka, a] : candidates) {
      bool top = true;
      for (const auto& [kb, b] : candidates)
        if (ka != kb && b.size() > a.size() && sub(a, b)) top = false;
      if (top) maximal.insert(ka);
    }
    const auto direct = gn_direct(g, o_star);
    const std::set<std::string> want = direct ? std::set<std::string>{code_of(*direct)} : std::set<std::string>{};
    ++checked;
    if (maximal != want) {
      ++mismatches;
      r.check("conditions match the direct computation", false, "for " + code_of(g),
              {code_of(g), maximal.empty() ? "none" : *maximal.begin()});
    }
  }
  if (!mismatches) r.check("conditions match the direct computation", true, std::to_string(checked) + " digraphs");
}

void lemma_union_with_circles(LemmaReport& r, const Params& p) {
  const auto sizes = param_ints(p, "sizes", {4, 5, 6});
  const int n = static_cast<int>(sizes.size());
  if (n < 1 || n > 3) throw Error(Errc::BadParams, "union-with-circles supports 1..3 circles");
  Digraph o_star(1);
  try {
    o_star = circles(sizes);
  } catch (const Error& e) {
    throw Error(Errc::BadParams, e.what());
  }
  if (*std::min_element(sizes.begin(), sizes.end()) < n + 1)
    throw Error(Errc::BadParams, "smallest circle must have more vertices than there are circles");
  r.notes.push_back("the circle-count and component conditions use their verified closed forms");

  std::vector<Digraph> level;
  for (const auto& g : members_upto(n))
    if (g.size() == n) level.push_back(g);
  std::vector<std::vector<Digraph>> io_subs(level.size());
  std::vector<std::optional<Digraph>> gn(level.size());
  for (std::size_t a = 0; a < level.size(); ++a) {
    for (const auto& t : small_types(level[a], n)) {
      Digraph y = t.to_digraph();
      if (is_io(y)) io_subs[a].push_back(disjoint_union(y, o_star));
    }
    gn[a] = gn_direct(level[a], o_star);
  }
  int mismatches = 0;
  for (std::size_t a = 0; a < level.size(); ++a)
    for (std::size_t b = 0; b < level.size(); ++b) {
      const Digraph x = disjoint_union(level[b], o_star);
      const auto xn = gn_direct(x, o_star);
      bool rel = x.size() == o_star.size() + level[a].size();
      rel = rel && (xn.has_value() == gn[a].has_value()) && (!xn || is_isomorphic(*xn, *gn[a]));
      for (const auto& y : io_subs[a]) {
        if (!rel) break;
        rel = sub(y, x);
      }
      if (rel != (a == b)) {
        ++mismatches;
        r.check("relation holds exactly for equal G", false, "", {code_of(level[a]), code_of(level[b])});
      }
    }
  if (!mismatches)
    r.check("relation holds exactly for equal G", true, std::to_string(level.size() * level.size()) + " pairs");
}

namespace {

Digraph tail_pattern(Box box) {
  Digraph g = Digraph::from_edges(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}});
  if (box == Box::Loop) g.set_edge(4, 4);
  return g;
}

Digraph pair_pattern(Box a, Box b, bool both) {
  Digraph g = Digraph::from_edges(10, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {4, 5}, {6, 5}, {7, 6}, {8, 7}, {7, 9}});
  if (a == Box::Loop) g.set_edge(4, 4);
  if (b == Box::Loop) g.set_edge(5, 5);
  if (both) g.set_edge(5, 4);
  return g;
}

Digraph box_graph(Box box) { return family(box == Box::Loop ? Family::L : Family::E, 1); }

bool male_conditions(const Digraph& x, int i, Box box) {
  if (x.size() != i + 2) return false;
  if (count_high_degree(x, 3) > 1 || count_high_degree(x, 4) > 0) return false;
  const Digraph o = family(Family::O, i);
  return sub(o, x) && sub(tail_pattern(box), x) && sub(disjoint_union(o, box_graph(box)), x);
}

bool pair_conditions(const Digraph& x, int i, Box a, int j, Box b, PairMode mode) {
  if (x.size() != i + j + 4) return false;
  // Joining both tail ends both ways lifts them to degree 3 as well.
  const int cap = mode == PairMode::Bi ? 4 : 2;
  if (count_high_degree(x, 3) > cap || count_high_degree(x, 4) > 0) return false;
  if (!sub(male(i, a), x) || !sub(male(j, b), x)) return false;
  if (mode == PairMode::Union) {
    const Digraph two = disjoint_union(box_graph(a), box_graph(b));
    return sub(disjoint_union(disjoint_union(family(Family::O, i), family(Family::O, j)), two), x);
  }
  return sub(pair_pattern(a, b, mode == PairMode::Bi), x);
}

std::string box_name(Box b) { return b == Box::Loop ? "L" : "0"; }
std::string mode_name(PairMode m) { return m == PairMode::Union ? "union" : m == PairMode::To ? "to" : "bi"; }

}  // namespace

void lemma_male_rel(LemmaReport& r, const Params& p) {
  const int i = param_int(p, "i", 4), j = param_int(p, "j", 5);
  if (i <= 3 || j <= 3 || i == j || i > 12 || j > 12)
    throw Error(Errc::BadParams, "male-rel needs distinct i, j in 4..12");
  r.params["i"] = std::to_string(i);
  r.params["j"] = std::to_string(j);
  r.notes.push_back("search fixes the induced circle and allows one edge between it and the two extra vertices");

  // Uniqueness of the single gadget; the second size is probed and becomes a
  // hard check with strict=1.
  const bool strict = param_int(p, "strict", 0) != 0;
  for (int size : {i, j}) {
    std::map<Box, std::set<std::string>> found, repaired;
    const int u = size, w = size + 1;
    const Digraph long_line = family(Family::I, size + 1);
    for (int inner = 0; inner < 16; ++inner)
      for (int link = 0; link <= 4 * size; ++link) {
        Digraph x(size + 2);
        for (int v = 0; v < size; ++v) x.set_edge(v, (v + 1) % size);
        if (inner & 1) x.set_edge(u, u);
        if (inner & 2) x.set_edge(w, w);
        if (inner & 4) x.set_edge(u, w);
        if (inner & 8) x.set_edge(w, u);
        if (link > 0) {
          const int c = (link - 1) / 4, kind = (link - 1) % 4;
          const int extra = kind < 2 ? u : w;
          if (kind % 2 == 0) x.set_edge(c, extra);
          else x.set_edge(extra, c);
        }
        for (Box box : {Box::Plain, Box::Loop})
          if (male_conditions(x, size, box)) {
            found[box].insert(code_of(x));
            if (box == Box::Loop || sub(long_line, x)) repaired[box].insert(code_of(x));
          }
      }
    for (Box box : {Box::Plain, Box::Loop}) {
      const std::string name = "male " + std::to_string(size) + ":" + box_name(box) + " is the unique solution";
      const std::set<std::string> want = {code_of(male(size, box))};
      if (size == i || strict) {
        expect_set(r, name, found[box], want);
      } else if (found[box] != want) {
        r.notes.push_back(name + ": no, " + std::to_string(found[box].size()) +
                          " solutions; the tail pattern also fits along a circle of 5 or more vertices");
        r.notes.push_back("requiring I_" + std::to_string(size + 1) + " below X for the plain box leaves " +
                          std::to_string(repaired[box].size()) + " solution(s)" +
                          (repaired[box] == want ? ", the gadget itself" : ""));
      }
    }
  }

  // Each pair construct meets its own conditions and no other.
  int wrong = 0;
  for (Box a : {Box::Plain, Box::Loop})
    for (Box b : {Box::Plain, Box::Loop})
      for (PairMode mode : {PairMode::Union, PairMode::To, PairMode::Bi}) {
        const Digraph x = male_pair(i, a, j, b, mode);
        for (Box a2 : {Box::Plain, Box::Loop})
          for (Box b2 : {Box::Plain, Box::Loop})
            for (PairMode mode2 : {PairMode::Union, PairMode::To, PairMode::Bi}) {
              const bool same = a == a2 && b == b2 && mode == mode2;
              if (pair_conditions(x, i, a2, j, b2, mode2) != same) {
                ++wrong;
                r.check("pair conditions discriminate", false,
                        mode_name(mode) + box_name(a) + box_name(b) + " vs " + mode_name(mode2) + box_name(a2) +
                            box_name(b2),
                        {code_of(x)});
              }
            }
      }
  if (!wrong) r.check("pair conditions discriminate", true, "12 constructs");
}

bool attach_conditions(const Digraph& g, const Digraph& o_star, const std::vector<int>& sizes,
                       const Digraph& x, std::string* failed) {
  auto fail = [&](const std::string& why) {
    if (failed) *failed = why;
    return false;
  };
  if (x.size() != g.size() + o_star.size() + static_cast<int>(sizes.size())) return fail("size");
  if (!sub(disjoint_union(g, o_star), x)) return fail("G + O* not below");
  for (int s : sizes)
    if (!sub(male(s, Box::Plain), x) && !sub(male(s, Box::Loop), x))
      return fail("no gadget for circle " + std::to_string(s));
  for (int s : sizes)
    for (int t : sizes) {
      if (s >= t) continue;
      bool any = false;
      for (Box a : {Box::Plain, Box::Loop})
        for (Box b : {Box::Plain, Box::Loop})
          for (PairMode mode : {PairMode::Union, PairMode::To, PairMode::Bi})
            if (!any && (sub(male_pair(s, a, t, b, mode), x) || sub(male_pair(t, b, s, a, mode), x))) any = true;
      if (!any) return fail("no pair gadget for circles " + std::to_string(s) + ", " + std::to_string(t));
    }
  return true;
}

void lemma_attach_rel(LemmaReport& r, const Params& p) {
  const Digraph g = param_graph(param_str(p, "g", "E2"));
  const auto sizes = param_ints(p, "sizes", {7, 8});
  if (static_cast<int>(sizes.size()) != g.size())
    throw Error(Errc::BadParams, "attach-rel needs one circle size per vertex");
  const int n = g.size();
  if (*std::min_element(sizes.begin(), sizes.end()) <= n * n + n)
    throw Error(Errc::BadParams, "circle sizes must exceed n^2+n");
  Digraph o_star(1);
  try {
    o_star = circles(sizes);
  } catch (const Error& e) {
    throw Error(Errc::BadParams, e.what());
  }
  std::vector<int> alpha(n);
  for (int k = 0; k < n; ++k) alpha[k] = k;
  do {
    std::string label;
    for (int a : alpha) label += std::to_string(a + 1);
    AttachLayout layout;
    const Digraph x = attach(g, {sizes, alpha}, &layout);
    std::string why;
    r.check("construct meets the conditions, alpha " + label, attach_conditions(g, o_star, sizes, x, &why), why,
            {code_of(x)});

    Digraph cut = x;  // pointer edge into G removed
    cut.set_edge(layout.pointer[0], alpha[0], false);
    r.check("missing pointer edge is rejected, alpha " + label, !attach_conditions(g, o_star, sizes, cut), "",
            {code_of(cut)});
  } while (std::next_permutation(alpha.begin(), alpha.end()));

  const Digraph detached = disjoint_union(disjoint_union(g, o_star), family(Family::E, n));
  r.check("unlinked pointers are rejected", !attach_conditions(g, o_star, sizes, detached), "", {code_of(detached)});
}

namespace {

// The conditions on the full edge-supporting construct.
void support_conditions(LemmaReport& r, const std::string& label, const Digraph& g, const SupportSpec& spec,
                        const SupportConstruct& sc, const Digraph& total, bool expect_pass) {
  std::vector<std::string> failures;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };
  const int n = g.size();
  const Digraph o_star = circles(spec.l_sizes);
  for (int s : spec.l_sizes) need(s > n * n + n, "circle " + std::to_string(s) + " too small");
  need(attach_conditions(sc.g_s, sc.o_s, sc.circle_sizes, total), "attach shape of the construct");
  need(sub(o_star, sc.o_s), "O* below O*_s");
  const int l_first = spec.l_sizes.front();
  for (int s : sc.circle_sizes) need(s >= l_first, "circle below l_1");
  need(sub(attach(g, {spec.l_sizes, spec.alpha}), total), "G <- O* below the construct");

  auto has = [&](const Digraph& pattern) { return sub(pattern, total); };
  std::set<int> used;
  const auto& ks = spec.d_sizes;
  auto unions_ok = [&](int k, std::initializer_list<int> skip) {
    for (int l : sc.circle_sizes) {
      if (l == k || std::find(skip.begin(), skip.end(), l) != skip.end()) continue;
      if (!has(male_pair(k, Box::Plain, l, Box::Plain, PairMode::Union)) &&
          !has(male_pair(k, Box::Plain, l, Box::Loop, PairMode::Union)))
        return false;
    }
    return true;
  };
  for (int li : spec.l_sizes) {
    if (!has(male(li, Box::Loop))) continue;
    bool ok = false;
    for (int k : ks)
      if (has(male_pair(li, Box::Loop, k, Box::Plain, PairMode::Bi)) && unions_ok(k, {li})) {
        ok = true;
        used.insert(k);
      }
    need(ok, "loop on circle " + std::to_string(li) + " unsupported");
  }
  for (int li : spec.l_sizes)
    for (int lj : spec.l_sizes) {
      if (li == lj) continue;
      for (Box a : {Box::Plain, Box::Loop})
        for (Box b : {Box::Plain, Box::Loop}) {
          auto supported = [&](int k) {
            return has(male_pair(li, a, k, Box::Plain, PairMode::To)) &&
                   has(male_pair(k, Box::Plain, lj, b, PairMode::To)) && unions_ok(k, {li, lj});
          };
          if (has(male_pair(li, a, lj, b, PairMode::To))) {
            bool ok = false;
            for (int k : ks)
              if (supported(k)) {
                ok = true;
                used.insert(k);
              }
            need(ok, "edge " + std::to_string(li) + "->" + std::to_string(lj) + " unsupported");
          }
          if (li < lj && has(male_pair(li, a, lj, b, PairMode::Bi))) {
            bool ok = false;
            for (int k1 : ks)
              for (int k2 : ks) {
                if (k1 == k2) continue;
                const bool back = has(male_pair(lj, b, k2, Box::Plain, PairMode::To)) &&
                                  has(male_pair(k2, Box::Plain, li, a, PairMode::To));
                if (supported(k1) && back) {
                  ok = true;
                  used.insert(k1);
                  used.insert(k2);
                }
              }
            need(ok, "edge pair " + std::to_string(li) + "<->" + std::to_string(lj) + " unsupported");
          }
        }
    }
  for (int k : ks) need(used.count(k) > 0, "support circle " + std::to_string(k) + " unused");

  std::string detail;
  for (const auto& f : failures) detail += (detail.empty() ? "" : "; ") + f;
  if (expect_pass)
    r.check("construct meets the conditions for " + label, failures.empty(), detail, {code_of(g)});
  else
    r.check("corrupted support is rejected for " + label, !failures.empty(), detail, {code_of(g)});
}

}  // namespace

void lemma_support_rel(LemmaReport& r, const Params& p) {
  std::vector<std::string> names;
  if (p.count("g")) names.push_back(p.at("g"));
  else names = {"E1", "L1", "E2", "@P", "@E'", "@A"};
  for (const auto& name : names) {
    const Digraph g = param_graph(name);
    if (g.size() > 2) throw Error(Errc::BadParams, "support-rel supports graphs with at most 2 vertices");
    const SupportSpec spec = default_support_spec(g);
    const SupportConstruct sc = edge_support(g, spec);
    support_conditions(r, name, g, spec, sc, sc.total, true);
    if (sc.edges.empty()) continue;
    // Drop the edge leaving the first support vertex.
    Digraph broken = sc.total;
    const int s = g.size();
    const int target = sc.edges[0].second;
    broken.set_edge(s, target, false);
    support_conditions(r, name, g, spec, sc, broken, false);
  }
}

}  // namespace dposet::detail
