#include <algorithm>
#include <bit>
#include <map>
#include <random>

#include "dposet/error.hpp"
#include "dposet/fo.hpp"
#include "lemma_support.hpp"

namespace dposet::detail {

namespace {

std::vector<Digraph> members_upto(int bound) {
  std::vector<Digraph> out;
  for (const auto& level : shared_catalog(bound).levels) {
    if (level.n > bound) break;
    for (const auto& c : level.members) out.push_back(c.to_digraph());
  }
  return out;
}

// Types allowed as 1-, 2- and 3-element substructures of an IO-graph.
std::set<CanonCode> io_allowed_small() {
  const Digraph e1 = family(Family::E, 1), i2 = family(Family::I, 2);
  return {canonical_form(e1),
          canonical_form(family(Family::E, 2)),
          canonical_form(i2),
          canonical_form(family(Family::E, 3)),
          canonical_form(disjoint_union(i2, e1)),
          canonical_form(family(Family::I, 3)),
          canonical_form(family(Family::O, 3))};
}

bool io_by_definition(const Digraph& g, const std::set<CanonCode>& allowed) {
  for (const auto& t : small_types(g, 3))
    if (!allowed.count(t)) return false;
  return true;
}

// Reports every element of the symmetric difference as a counterexample.
void compare_sets(LemmaReport& r, const std::string& name, const std::set<std::string>& got,
                  const std::set<std::string>& want) {
  std::vector<std::string> extra, missing;
  std::set_difference(got.begin(), got.end(), want.begin(), want.end(), std::back_inserter(extra));
  std::set_difference(want.begin(), want.end(), got.begin(), got.end(), std::back_inserter(missing));
  if (extra.empty() && missing.empty()) {
    r.check(name, true, std::to_string(got.size()) + " elements");
    return;
  }
  for (const auto& e : extra) r.check(name, false, "unexpected " + e, {e});
  for (const auto& m : missing) r.check(name, false, "missing " + m, {m});
}

// IO-graphs keyed by component list, with lower covers by one-vertex deletion.
struct IoFamily {
  std::map<std::string, Digraph> graphs;
  std::map<std::string, std::set<std::string>> lower;

  explicit IoFamily(const std::vector<Digraph>& members) {
    for (const auto& g : members) graphs.emplace(io_key(g), g);
    for (const auto& [key, g] : graphs) {
      auto& covers = lower[key];
      if (g.size() == 1) continue;
      for (int v = 0; v < g.size(); ++v) covers.insert(io_key(induced_mask(g, g.all_mask() & ~(std::uint64_t{1} << v))));
    }
  }

  std::map<std::string, std::set<std::string>> upper() const {
    std::map<std::string, std::set<std::string>> up;
    for (const auto& [key, g] : graphs) up[key];
    for (const auto& [key, lows] : lower)
      for (const auto& lo : lows) up[lo].insert(key);
    return up;
  }
};

std::vector<Digraph> catalog_io(int bound) {
  std::vector<Digraph> out;
  for (auto& g : members_upto(bound))
    if (is_io(g)) out.push_back(g);
  return out;
}

bool all_circles(const Digraph& g) {
  for (const auto& c : wccs(g))
    if (!(c.size() >= 3 && c.edge_count() == c.size() && is_io(c))) return false;
  return true;
}

// k copies of one of E1 (k > 1), I2, O_n.
bool copies_of_basic(const Digraph& g) {
  auto comps = wccs(g);
  const CanonCode first = canonical_form(comps[0]);
  for (const auto& c : comps)
    if (canonical_form(c) != first) return false;
  const Digraph& c = comps[0];
  if (c.size() == 1) return comps.size() > 1;
  if (c.size() == 2) return c.edge_count() == 1;
  return c.edge_count() == c.size();
}

void circles_set_on(LemmaReport& r, const std::string& label, const IoFamily& fam, int assert_n) {
  const Digraph i3 = family(Family::I, 3), o3 = family(Family::O, 3);
  std::set<std::string> unique_lower, want_unique;
  for (const auto& [key, g] : fam.graphs) {
    if (g.size() > assert_n) continue;
    if (fam.lower.at(key).size() == 1) unique_lower.insert(key);
    if (copies_of_basic(g)) want_unique.insert(key);
  }
  compare_sets(r, label + ": unique lower cover within IO", unique_lower, want_unique);

  std::vector<std::string> with_line;
  for (const auto& key : unique_lower) {
    const Digraph& g = fam.graphs.at(key);
    if (sub(i3, g) || sub(o3, g)) with_line.push_back(key);
  }
  std::set<std::string> minimal, want_minimal;
  for (const auto& a : with_line) {
    bool is_min = true;
    for (const auto& b : with_line)
      if (a != b && fam.graphs.at(b).size() < fam.graphs.at(a).size() &&
          sub(fam.graphs.at(b), fam.graphs.at(a))) {
        is_min = false;
        break;
      }
    if (is_min) minimal.insert(a);
  }
  for (int n = 3; n <= assert_n; ++n) want_minimal.insert("O" + std::to_string(n));
  compare_sets(r, label + ": minimal ones containing I3 or O3 are the circles", minimal, want_minimal);
}

void distinct_circles_on(LemmaReport& r, const std::string& label, const IoFamily& fam, int assert_n) {
  const auto up = fam.upper();
  std::set<std::string> unique_upper, want_unions;
  for (const auto& [key, g] : fam.graphs) {
    if (g.size() > assert_n) continue;
    if (up.at(key).size() == 1) unique_upper.insert(key);
    if (all_circles(g)) want_unions.insert(key);
  }
  compare_sets(r, label + ": unique upper cover within IO means union of circles", unique_upper, want_unions);

  // O_i + O_i: a single circle type as substructure and twice its size.
  std::set<std::string> doubled, want_doubled;
  for (const auto& key : unique_upper) {
    const Digraph& g = fam.graphs.at(key);
    std::vector<int> circle_sizes;
    for (int k = 3; k <= g.size(); ++k)
      if (sub(family(Family::O, k), g)) circle_sizes.push_back(k);
    if (circle_sizes.size() == 1 && g.size() == 2 * circle_sizes[0]) doubled.insert(key);
    auto comps = wccs(g);
    if (comps.size() == 2 && is_isomorphic(comps[0], comps[1])) want_doubled.insert(key);
  }
  compare_sets(r, label + ": doubled circles", doubled, want_doubled);

  std::set<std::string> distinct, want_distinct;
  for (const auto& key : unique_upper) {
    const Digraph& g = fam.graphs.at(key);
    bool clean = true;
    for (const auto& d : doubled)
      if (sub(fam.graphs.at(d), g)) clean = false;
    if (clean) distinct.insert(key);
    std::set<int> sizes;
    bool repeated = false;
    for (const auto& c : wccs(g)) repeated |= !sizes.insert(c.size()).second;
    if (!repeated) want_distinct.insert(key);
  }
  compare_sets(r, label + ": circles of different sizes", distinct, want_distinct);
}

}  // namespace

void lemma_io_def(LemmaReport& r, int bound, int margin) {
  const auto allowed = io_allowed_small();
  std::vector<fo::FormulaPtr> parts;
  for (const auto& g : members_upto(std::min(bound, 3))) {
    const CanonCode c = canonical_form(g);
    if (!allowed.count(c)) parts.push_back(fo::neg(fo::atom(fo::Kind::Leq, fo::constant(c), fo::variable("x"))));
  }
  const auto formula = fo::conj(parts);
  r.notes.push_back("formula forbids " + std::to_string(parts.size()) + " types with at most 3 vertices");
  const Poset& universe = shared_poset(bound, Order::Sub);
  std::set<std::string> defined, oracle;
  for (const auto& c : fo::defined_set(*formula, universe))
    if (c.vertex_count() <= bound - margin) defined.insert(c.text());
  for (const auto& c : universe.elements())
    if (c.vertex_count() <= bound - margin && is_io(c.to_digraph())) oracle.insert(c.text());
  compare_sets(r, "defined set equals IO-graphs", defined, oracle);
}

void lemma_io_char(LemmaReport& r, int bound, int margin, const Params& p) {
  const auto allowed = io_allowed_small();
  const int assert_n = bound - margin;
  std::set<std::string> by_def, by_structure;
  for (const auto& g : members_upto(assert_n)) {
    if (io_by_definition(g, allowed)) by_def.insert(code_of(g));
    if (is_io(g)) by_structure.insert(code_of(g));
  }
  compare_sets(r, "definition equals lines-and-circles structure", by_def, by_structure);

  std::set<std::string> generated;
  for (const auto& g : io_universe(assert_n)) generated.insert(code_of(g));
  compare_sets(r, "generated unions of lines and circles", generated, by_def);

  // Past the catalog: every generated IO-graph meets the definition.
  const int io_n = param_int(p, "io_n", 9);
  int bad = 0;
  for (const auto& g : io_universe(io_n))
    if (!io_by_definition(g, allowed)) {
      ++bad;
      r.check("generated IO-graph meets the definition", false, io_key(g), {code_of(g)});
    }
  if (!bad) r.check("generated IO-graphs up to " + std::to_string(io_n) + " vertices meet the definition", true);
}

void lemma_circles_set(LemmaReport& r, int bound, int margin, const Params& p) {
  circles_set_on(r, "catalog", IoFamily(catalog_io(bound)), bound - margin);
  const int io_n = param_int(p, "io_n", 10);
  circles_set_on(r, "IO-graphs up to " + std::to_string(io_n), IoFamily(io_universe(io_n)), io_n - margin);
}

void lemma_distinct_circles(LemmaReport& r, int bound, int margin, const Params& p) {
  if (margin < 1) r.notes.push_back("margin below 1: upper covers of the largest elements are truncated");
  distinct_circles_on(r, "catalog", IoFamily(catalog_io(bound)), bound - margin);
  const int io_n = param_int(p, "io_n", 10);
  distinct_circles_on(r, "IO-graphs up to " + std::to_string(io_n), IoFamily(io_universe(io_n)), io_n - margin);
}

void lemma_loop_parts(LemmaReport& r, int bound, int margin) {
  const CanonCode b = pair_code("B"), c = pair_code("C"), d = pair_code("D");
  const int assert_n = bound - margin;
  auto members = members_upto(assert_n);
  std::vector<std::vector<std::string>> by_size(assert_n + 1);
  for (const auto& g : members) by_size[g.size()].push_back(code_of(g));

  std::set<std::string> found, oracle;
  for (const auto& z : members) {
    if (z.size() < 2) continue;
    const auto full = loop_part(z, LoopPart::Full), free = loop_part(z, LoopPart::Free);
    const std::string full_code = full ? code_of(*full) : "", free_code = free ? code_of(*free) : "";
    const auto pairs = substructure_types(z, 2);
    const bool clean = !pairs.count(b) && !pairs.count(c) && !pairs.count(d);
    for (int k = 1; k < z.size(); ++k)
      for (const auto& x : by_size[k])
        for (const auto& y : by_size[z.size() - k])
          if (clean && x == full_code && y == free_code) found.insert(x + " " + y + " " + code_of(z));
  }
  for (const auto& g : members)
    for (const auto& f : members) {
      if (g.size() + f.size() > assert_n) continue;
      if (g.loop_count() != g.size() || f.loop_count() != 0) continue;
      oracle.insert(code_of(g) + " " + code_of(f) + " " + code_of(disjoint_union(g, f)));
    }
  compare_sets(r, "triples meeting the conditions are (G, F, G+F)", found, oracle);
}

namespace {

// Size markers: X whose loop-full part is G1 and loop-free part E_i (or the
// loop-exchanged conditions). Returns the i values of all markers found.
std::vector<int> markers(const std::vector<Digraph>& universe, const Digraph& part, bool part_is_full) {
  const auto pictures = arrow_pictures();
  std::set<CanonCode> converted_pictures;
  for (const auto& c : pictures)
    converted_pictures.insert(canonical_form(unary_transform(c.to_digraph(), Transform::LoopExchange)));
  const auto& forbidden_pictures = part_is_full ? pictures : converted_pictures;
  const CanonCode allowed_mixed = pair_code(part_is_full ? "B" : "C");
  const std::set<CanonCode> mixed_with_edge = {pair_code("B"), pair_code("C"), pair_code("D")};
  const CanonCode part_code = canonical_form(part);
  const Digraph part_plus = disjoint_union(part, family(part_is_full ? Family::E : Family::L, 1));

  std::vector<int> out;
  for (const auto& x : universe) {
    const auto mine = loop_part(x, part_is_full ? LoopPart::Full : LoopPart::Free);
    const auto other = loop_part(x, part_is_full ? LoopPart::Free : LoopPart::Full);
    if (!mine || !other || canonical_form(*mine) != part_code) continue;
    const int i = other->size();
    if (other->edge_count() != (part_is_full ? 0 : i)) continue;  // E_i or L_i
    bool ok = true;
    for (const auto& t : small_types(x, 3)) {
      if (mixed_with_edge.count(t) && t != allowed_mixed) ok = false;
      if (forbidden_pictures.count(t)) ok = false;
    }
    if (!ok) continue;
    if (sub(part_plus, x)) continue;
    const Digraph other_plus = disjoint_union(*other, family(part_is_full ? Family::L : Family::E, 1));
    if (sub(other_plus, x)) continue;
    out.push_back(i);
  }
  return out;
}

}  // namespace

void lemma_same_size(LemmaReport& r, int bound, int margin) {
  const int assert_n = bound - margin;
  if (2 * assert_n > bound) {
    r.skip("markers for parts of size " + std::to_string(assert_n) + " need bound " + std::to_string(2 * assert_n));
    return;
  }
  const auto universe = members_upto(bound);
  std::map<std::string, int> marker_count;
  for (const auto& part : members_upto(assert_n)) {
    const bool full = part.loop_count() == part.size();
    const bool free = part.loop_count() == 0;
    if (!full && !free) continue;
    const auto found = markers(universe, part, full);
    const bool ok = found.size() == 1 && found[0] == part.size();
    r.check(std::string(full ? "loop-full" : "loop-free") + " marker unique with matching size", ok,
            code_of(part) + " -> " + std::to_string(found.size()) + " marker(s)", {code_of(part)});
    if (found.size() == 1) marker_count[code_of(part)] = found[0];
  }
  auto count = [&](const Digraph& g) {
    int total = 0;
    for (auto which : {LoopPart::Full, LoopPart::Free}) {
      auto part = loop_part(g, which);
      if (part) total += marker_count.at(code_of(*part));
    }
    return total;
  };
  const auto elems = members_upto(assert_n);
  std::vector<int> counts;
  for (const auto& g : elems) counts.push_back(count(g));
  int mismatches = 0;
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) {
      const bool rel = counts[a] == counts[b];
      if (rel != (elems[a].size() == elems[b].size())) {
        ++mismatches;
        r.check("relation equals equal vertex count", false, "", {code_of(elems[a]), code_of(elems[b])});
      }
    }
  if (!mismatches) r.check("relation equals equal vertex count", true, std::to_string(elems.size()) + " elements squared");
}

void lemma_certificate(LemmaReport& r, int bound, int margin, const Params& p) {
  const int pp = param_int(p, "p", 1), q = param_int(p, "q", 3);
  if (pp < 0 || q < 1) throw Error(Errc::BadParams, "certificate needs p >= 0 and q >= 1");
  r.params["p"] = std::to_string(pp);
  r.params["q"] = std::to_string(q);
  const int cert_bound = (pp + 1) * (q + 1);
  std::set<CanonCode> certs;
  for (const auto& c : members_upto(std::min(bound, cert_bound)))
    if (count_high_degree(c, q) > pp) certs.insert(canonical_form(c));
  r.notes.push_back(std::to_string(certs.size()) + " certificates with at most " + std::to_string(cert_bound) +
                    " vertices in the universe");
  int mismatches = 0;
  for (const auto& g : members_upto(bound - margin)) {
    bool has_cert = false;
    for (std::uint64_t s = 1; s <= g.all_mask() && !has_cert; ++s)
      has_cert = certs.count(canonical_form(induced_mask(g, s))) > 0;
    if (has_cert != (count_high_degree(g, q) > pp)) {
      ++mismatches;
      r.check("forbidden certificates equal degree count", false, "", {code_of(g)});
    }
  }
  if (!mismatches) r.check("forbidden certificates equal degree count", true);

  // Beyond the universe: minimal certificates of random digraphs stay within
  // (p+1)(q+1) vertices.
  const int samples = param_int(p, "samples", 200);
  std::mt19937_64 rng(static_cast<std::uint64_t>(param_int(p, "seed", 7)));
  auto min_certificate = [&](const Digraph& g) {
    int best = g.size() + 1;
    for (std::uint64_t s = 1; s <= g.all_mask(); ++s) {
      const int k = std::popcount(s);
      if (k < best && count_high_degree(induced_mask(g, s), q) > pp) best = k;
    }
    return best;
  };
  int largest = 0, tested = 0;
  for (int t = 0; t < samples; ++t) {
    const int n = 5 + static_cast<int>(rng() % 4);
    const double density = 0.15 + 0.5 * static_cast<double>(rng() % 1000) / 1000.0;
    Digraph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (static_cast<double>(rng() % 1000) / 1000.0 < density) g.set_edge(u, v);
    if (count_high_degree(g, q) <= pp) continue;
    ++tested;
    const int m = min_certificate(g);
    largest = std::max(largest, m);
    if (m > cert_bound) r.check("random minimal certificate size", false, std::to_string(m), {code_of(g)});
  }
  r.check("random minimal certificates within (p+1)(q+1) vertices", largest <= cert_bound,
          std::to_string(tested) + " digraphs, largest " + std::to_string(largest));

  // p+1 disjoint out-stars need every vertex, which can exceed (p+1)q.
  if (cert_bound <= 12) {
    Digraph stars(cert_bound);
    for (int s = 0; s <= pp; ++s)
      for (int leaf = 1; leaf <= q; ++leaf) stars.set_edge(s * (q + 1), s * (q + 1) + leaf);
    const int m = min_certificate(stars);
    r.check("disjoint stars need (p+1)(q+1) vertices", m == cert_bound, std::to_string(m));
    if (m > (pp + 1) * q)
      r.notes.push_back("p+1 disjoint out-stars with q leaves have no certificate below " + std::to_string(m) +
                        " vertices, so the size bound (p+1)q is too small; (p+1)(q+1) is used");
  }
}

}  // namespace dposet::detail
