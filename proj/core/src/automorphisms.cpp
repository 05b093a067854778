#include "dposet/automorphisms.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include <json.hpp>

#include "dposet/error.hpp"

namespace dposet {

namespace {

// Mixed-type pair indices, by which vertex carries the loop.
constexpr std::array<int, 4> kMixedLoopA{1, 5, 9, 13};   // loop on a: A, B, C, D
constexpr std::array<int, 4> kMixedLoopB{2, 10, 6, 14};  // loop on b: A, B, C, D

constexpr TypePerm kIdPerm{0, 1, 2, 3};
constexpr TypePerm kSwapBC{0, 2, 1, 3};

int letter(char c) {
  if (c >= 'A' && c <= 'D') return c - 'A';
  return -1;
}

std::array<std::uint8_t, 16> identity_pmap() {
  std::array<std::uint8_t, 16> p{};
  for (int i = 0; i < 16; ++i) p[i] = static_cast<std::uint8_t>(i);
  return p;
}

}  // namespace

TypePerm parse_type_perm(std::string_view text) {
  auto bad = [&](const std::string& why) -> TypePerm {
    throw Error(Errc::BadPermutation, "'" + std::string(text) + "': " + why);
  };
  if (text.empty()) return bad("empty permutation");
  TypePerm p = kIdPerm;
  if (text.front() == '(') {
    std::size_t i = 0;
    std::array<bool, 4> used{};
    while (i < text.size()) {
      if (text[i] != '(') return bad("expected '('");
      auto close = text.find(')', i);
      if (close == std::string_view::npos) return bad("unclosed cycle");
      auto cyc = text.substr(i + 1, close - i - 1);
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        const int x = letter(cyc[k]);
        if (x < 0) return bad("cycle entries must be A, B, C or D");
        if (used[x]) return bad("letter repeated");
        used[x] = true;
        p[x] = letter(cyc[(k + 1) % cyc.size()]);
      }
      i = close + 1;
    }
    return p;
  }
  if (text.size() != 4) return bad("one-line notation needs four letters");
  std::array<bool, 4> seen{};
  for (int k = 0; k < 4; ++k) {
    const int x = letter(text[k]);
    if (x < 0) return bad("letters must be A, B, C or D");
    if (seen[x]) return bad("letter repeated");
    seen[x] = true;
    p[k] = x;
  }
  return p;
}

std::string type_perm_name(const TypePerm& p) {
  std::string s;
  for (int x : p) s.push_back(static_cast<char>('A' + x));
  return s;
}

TypePerm compose_perm(const TypePerm& outer, const TypePerm& inner) {
  TypePerm r{};
  for (int x = 0; x < 4; ++x) r[x] = outer[inner[x]];
  return r;
}

LocalRule LocalRule::identity() { return unchecked({0, 1}, identity_pmap()); }

LocalRule LocalRule::unchecked(std::array<std::uint8_t, 2> vmap, std::array<std::uint8_t, 16> pmap) {
  LocalRule r;
  r.table_[0] = vmap[0];
  r.table_[1] = vmap[1];
  for (int i = 0; i < 16; ++i) r.table_[2 + i] = pmap[i];
  return r;
}

LocalRule LocalRule::from_tables(std::array<std::uint8_t, 2> vmap, std::array<std::uint8_t, 16> pmap) {
  auto r = unchecked(vmap, pmap);
  if (auto why = rule_violation(r)) throw Error(Errc::BadPermutation, "invalid rule: " + *why);
  return r;
}

std::optional<std::string> rule_violation(const LocalRule& r) {
  if (!((r.vmap(0) == 0 && r.vmap(1) == 1) || (r.vmap(0) == 1 && r.vmap(1) == 0)))
    return "vmap is not a bijection of the loop bit";
  std::array<bool, 16> hit{};
  for (int i = 0; i < 16; ++i) {
    const int o = r.pmap(i);
    if (o < 0 || o > 15 || hit[o]) return "pmap is not a bijection";
    hit[o] = true;
    if ((o & 1) != r.vmap(i & 1) || ((o >> 1) & 1) != r.vmap((i >> 1) & 1))
      return "pmap changes loops inconsistently with vmap at pair type " + std::to_string(i);
    if (r.pmap(swap_pair(i)) != swap_pair(o))
      return "pmap does not commute with exchanging the two vertices at pair type " + std::to_string(i);
  }
  return std::nullopt;
}

LocalRule pi_rule(const TypePerm& p) {
  auto pm = identity_pmap();
  for (int x = 0; x < 4; ++x) {
    pm[kMixedLoopA[x]] = static_cast<std::uint8_t>(kMixedLoopA[p[x]]);
    pm[kMixedLoopB[x]] = static_cast<std::uint8_t>(kMixedLoopB[p[x]]);
  }
  return LocalRule::from_tables({0, 1}, pm);
}

LocalRule rule_of_generator(std::string_view name) {
  auto pm = identity_pmap();
  auto swap = [&](int a, int b) {
    pm[a] = static_cast<std::uint8_t>(b);
    pm[b] = static_cast<std::uint8_t>(a);
  };
  if (name == "id") return LocalRule::identity();
  if (name == "phi1") {
    for (int i = 0; i < 16; ++i) pm[i] = static_cast<std::uint8_t>(i ^ 3);
    return LocalRule::from_tables({1, 0}, pm);
  }
  if (name == "phi2") swap(pair_index(0, 0, 0, 0), pair_index(0, 0, 1, 1));
  else if (name == "phi3") swap(pair_index(1, 1, 0, 0), pair_index(1, 1, 1, 1));
  else if (name == "phi4") swap(pair_index(0, 0, 1, 0), pair_index(0, 0, 0, 1));
  else if (name == "phi5") swap(pair_index(1, 1, 1, 0), pair_index(1, 1, 0, 1));
  else if (name.substr(0, 3) == "pi:") return pi_rule(parse_type_perm(name.substr(3)));
  else throw Error(Errc::BadPermutation, "unknown generator '" + std::string(name) + "'");
  return LocalRule::from_tables({0, 1}, pm);
}

Digraph apply(const LocalRule& r, const Digraph& g) {
  const int n = g.size();
  Digraph out(n);
  for (int v = 0; v < n; ++v)
    if (r.vmap(g.loop(v) ? 1 : 0)) out.set_edge(v, v);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const int o = r.pmap(pair_index(g.loop(a), g.loop(b), g.edge(a, b), g.edge(b, a)));
      if (o & 4) out.set_edge(a, b);
      if (o & 8) out.set_edge(b, a);
    }
  return out;
}

CanonCode apply_type(const LocalRule& r, const CanonCode& code) {
  return canonical_form(apply(r, code.to_digraph()));
}

LocalRule compose(const LocalRule& r1, const LocalRule& r2) {
  std::array<std::uint8_t, 2> v{};
  std::array<std::uint8_t, 16> p{};
  for (int i = 0; i < 2; ++i) v[i] = static_cast<std::uint8_t>(r2.vmap(r1.vmap(i)));
  for (int i = 0; i < 16; ++i) p[i] = static_cast<std::uint8_t>(r2.pmap(r1.pmap(i)));
  return LocalRule::unchecked(v, p);
}

LocalRule inverse(const LocalRule& r) {
  std::array<std::uint8_t, 2> v{};
  std::array<std::uint8_t, 16> p{};
  for (int i = 0; i < 2; ++i) v[r.vmap(i)] = static_cast<std::uint8_t>(i);
  for (int i = 0; i < 16; ++i) p[r.pmap(i)] = static_cast<std::uint8_t>(i);
  return LocalRule::unchecked(v, p);
}

std::vector<LocalRule> closure(const std::vector<LocalRule>& generators) {
  std::set<LocalRule> seen{LocalRule::identity()};
  std::vector<LocalRule> frontier{LocalRule::identity()};
  while (!frontier.empty()) {
    std::vector<LocalRule> next;
    for (const auto& x : frontier)
      for (const auto& g : generators) {
        auto y = compose(x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

namespace {

std::vector<TypePerm> all_perms() {
  std::vector<TypePerm> out;
  TypePerm p = kIdPerm;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

std::vector<LocalRule> all_generators(bool include_phi1) {
  std::vector<LocalRule> gens;
  if (include_phi1) gens.push_back(rule_of_generator("phi1"));
  for (const char* n : {"phi2", "phi3", "phi4", "phi5"}) gens.push_back(rule_of_generator(n));
  for (const auto& p : all_perms()) gens.push_back(pi_rule(p));
  return gens;
}

LocalRule rule_of_coordinates(const Coordinates& c) {
  // Rightmost factor acts first.
  LocalRule r = LocalRule::identity();
  if (c.eps) r = compose(r, rule_of_generator("phi1"));
  r = compose(r, pi_rule(c.pi));
  if (c.s) r = compose(r, rule_of_generator("phi5"));
  if (c.r) r = compose(r, rule_of_generator("phi4"));
  if (c.q) r = compose(r, rule_of_generator("phi3"));
  if (c.p) r = compose(r, rule_of_generator("phi2"));
  return r;
}

Coordinates multiply(const Coordinates& a, const Coordinates& b) {
  Coordinates bb = b;
  if (a.eps) {
    std::swap(bb.p, bb.q);
    std::swap(bb.r, bb.s);
    bb.pi = compose_perm(kSwapBC, compose_perm(b.pi, kSwapBC));
  }
  Coordinates out;
  out.p = a.p ^ bb.p;
  out.q = a.q ^ bb.q;
  out.r = a.r ^ bb.r;
  out.s = a.s ^ bb.s;
  out.pi = compose_perm(a.pi, bb.pi);
  out.eps = a.eps ^ b.eps;
  return out;
}

namespace {

std::vector<Coordinates> all_coordinates() {
  std::vector<Coordinates> out;
  for (int eps = 0; eps < 2; ++eps)
    for (const auto& pi : all_perms())
      for (int bits = 0; bits < 16; ++bits)
        out.push_back({bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1, pi, eps});
  return out;
}

const std::map<LocalRule, Coordinates>& coordinate_table() {
  static const auto table = [] {
    std::map<LocalRule, Coordinates> m;
    for (const auto& c : all_coordinates()) m.emplace(rule_of_coordinates(c), c);
    return m;
  }();
  return table;
}

}  // namespace

std::optional<Coordinates> coordinates_of(const LocalRule& r) {
  const auto& t = coordinate_table();
  auto it = t.find(r);
  if (it == t.end()) return std::nullopt;
  return it->second;
}

std::string describe(const LocalRule& r) {
  if (auto c = coordinates_of(r)) {
    std::string s;
    auto add = [&](bool on, const char* f) {
      if (!on) return;
      if (!s.empty()) s += " ";
      s += f;
    };
    add(c->p, "phi2");
    add(c->q, "phi3");
    add(c->r, "phi4");
    add(c->s, "phi5");
    if (c->pi != kIdPerm) {
      if (!s.empty()) s += " ";
      s += "pi:" + type_perm_name(c->pi);
    }
    add(c->eps, "phi1");
    return s.empty() ? "id" : s;
  }
  std::string s = "table:";
  for (auto b : r.table()) s += std::to_string(b) + ",";
  s.pop_back();
  return s;
}

bool AutReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AutCheck& c) { return c.pass; });
}

std::string AutReport::to_json(bool pretty) const {
  nlohmann::ordered_json j;
  j["subject"] = subject;
  j["status"] = passed() ? "pass" : "fail";
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json x;
    x["check"] = c.check;
    x["status"] = c.pass ? "pass" : "fail";
    if (!c.witness.empty()) x["witness"] = c.witness;
    arr.push_back(x);
  }
  j["checks"] = arr;
  return pretty ? j.dump(2) : j.dump();
}

AutReport verify_automorphism(const LocalRule& r, const Poset& u) {
  AutReport rep;
  rep.subject = describe(r);
  const int n = u.size();

  AutCheck welldef{"well-defined on isomorphism types", true, {}};
  AutCheck bij{"bijection on every level", true, {}};
  AutCheck order{"preserves and reflects the order", true, {}};

  std::vector<int> image(n, -1);
  for (int i = 0; i < n && welldef.pass; ++i) {
    const Digraph g = u.element(i).to_digraph();
    const CanonCode img = canonical_form(apply(r, g));
    // Adjacent transpositions generate all relabelings.
    for (int a = 0; a + 1 < g.size(); ++a) {
      std::vector<int> perm(g.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::swap(perm[a], perm[a + 1]);
      const CanonCode other = canonical_form(apply(r, induced(g, perm)));
      if (other != img) {
        welldef.pass = false;
        welldef.witness = {u.element(i).text(), img.text(), other.text()};
        break;
      }
    }
    auto idx = u.index_of(img);
    if (!idx) {
      bij.pass = false;
      bij.witness = {u.element(i).text(), img.text()};
      break;
    }
    image[i] = *idx;
  }
  if (welldef.pass && bij.pass) {
    std::vector<int> hits(n, -1);
    for (int i = 0; i < n; ++i) {
      if (hits[image[i]] >= 0) {
        bij.pass = false;
        bij.witness = {u.element(hits[image[i]]).text(), u.element(i).text(), u.element(image[i]).text()};
        break;
      }
      hits[image[i]] = i;
    }
  }
  if (welldef.pass && bij.pass) {
    for (int h = 0; h < n && order.pass; ++h)
      for (int g = 0; g < n; ++g)
        if (u.leq(g, h) != u.leq(image[g], image[h])) {
          order.pass = false;
          order.witness = {u.element(g).text(), u.element(h).text(), u.element(image[g]).text(),
                           u.element(image[h]).text()};
          break;
        }
  } else {
    order.pass = false;
    order.witness = {"skipped: the rule does not induce a map on types"};
  }
  rep.checks = {welldef, bij, order};
  return rep;
}

AutReport verify_automorphism(const LocalRule& r, int max_n) {
  return verify_automorphism(r, shared_poset(max_n, Order::Sub));
}

AutReport verify_structure(int pointwise_n) {
  AutReport rep;
  rep.subject = "structure of the generated group";
  const LocalRule id = LocalRule::identity();
  const LocalRule phi1 = rule_of_generator("phi1");
  std::map<std::string, LocalRule> phi;
  for (const char* n : {"phi1", "phi2", "phi3", "phi4", "phi5"}) phi.emplace(n, rule_of_generator(n));
  const auto perms = all_perms();

  auto add = [&](const std::string& name, bool pass, std::vector<std::string> witness = {}) {
    rep.checks.push_back({name, pass, pass ? std::vector<std::string>{} : std::move(witness)});
  };

  {
    std::vector<std::string> bad;
    for (const auto& [n, r] : phi)
      if (compose(r, r) != id) bad.push_back(n);
    add("phi1..phi5 are involutions", bad.empty(), bad);
  }
  {
    std::vector<std::string> bad;
    std::vector<std::pair<std::string, LocalRule>> gens;
    for (const char* n : {"phi2", "phi3", "phi4", "phi5"}) gens.emplace_back(n, phi.at(n));
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t b = a + 1; b < gens.size(); ++b)
        if (compose(gens[a].second, gens[b].second) != compose(gens[b].second, gens[a].second))
          bad.push_back(gens[a].first + "," + gens[b].first);
    for (const auto& [n, r] : gens)
      for (const auto& p : perms)
        if (compose(r, pi_rule(p)) != compose(pi_rule(p), r)) bad.push_back(n + ",pi:" + type_perm_name(p));
    add("phi2..phi5 commute pairwise and with every phi_pi", bad.empty(), bad);
  }
  {
    std::vector<std::string> bad;
    for (const auto& p : perms)
      for (const auto& s : perms)
        if (compose(pi_rule(s), pi_rule(p)) != pi_rule(compose_perm(p, s)))
          bad.push_back("pi:" + type_perm_name(p) + ",pi:" + type_perm_name(s));
    add("phi_pi after phi_sigma equals phi_(pi sigma)", bad.empty(), bad);
  }

  auto conj = [&](const LocalRule& r) { return compose(compose(phi1, r), phi1); };
  std::vector<std::tuple<std::string, LocalRule, LocalRule>> conjugations = {
      {"phi1 phi2 phi1 = phi3", conj(phi.at("phi2")), phi.at("phi3")},
      {"phi1 phi3 phi1 = phi2", conj(phi.at("phi3")), phi.at("phi2")},
      {"phi1 phi4 phi1 = phi5", conj(phi.at("phi4")), phi.at("phi5")},
      {"phi1 phi5 phi1 = phi4", conj(phi.at("phi5")), phi.at("phi4")},
  };
  {
    std::vector<std::string> bad;
    for (const auto& p : perms)
      if (conj(pi_rule(p)) != pi_rule(compose_perm(kSwapBC, compose_perm(p, kSwapBC))))
        bad.push_back("pi:" + type_perm_name(p));
    for (const auto& [name, lhs, rhs] : conjugations) add(name + " (tables)", lhs == rhs, {describe(lhs)});
    add("phi1 phi_pi phi1 = phi_((BC) pi (BC)) (tables)", bad.empty(), bad);
  }
  {
    const Catalog& cat = shared_catalog(pointwise_n);
    std::vector<std::string> bad;
    for (const auto& code : cat.all()) {
      const Digraph g = code.to_digraph();
      for (const auto& [name, lhs, rhs] : conjugations) {
        if (apply(lhs, g) != apply(rhs, g)) bad.push_back(name + " at " + code.text());
      }
      for (const auto& p : perms) {
        const Digraph lhs = apply(phi1, apply(pi_rule(p), apply(phi1, g)));
        const Digraph rhs = apply(pi_rule(compose_perm(kSwapBC, compose_perm(p, kSwapBC))), g);
        if (lhs != rhs) bad.push_back("pi:" + type_perm_name(p) + " at " + code.text());
      }
      if (bad.size() > 8) break;
    }
    add("conjugation identities pointwise on digraphs with <= " + std::to_string(pointwise_n) + " vertices",
        bad.empty(), bad);
  }
  {
    const auto full = closure(all_generators(true));
    const auto sub = closure(all_generators(false));
    add("closure order is 768", full.size() == 768, {std::to_string(full.size())});
    add("order without phi1 is 384", sub.size() == 384, {std::to_string(sub.size())});
    add("subgroup without phi1 has index 2", sub.size() * 2 == full.size(),
        {std::to_string(full.size()) + "/" + std::to_string(sub.size())});

    const auto coords = all_coordinates();
    std::set<LocalRule> images;
    for (const auto& c : coords) images.insert(rule_of_coordinates(c));
    const std::set<LocalRule> full_set(full.begin(), full.end());
    add("coordinate map is a bijection onto the closure", images == full_set,
        {std::to_string(images.size()) + " images"});

    std::vector<LocalRule> rules;
    for (const auto& c : coords) rules.push_back(rule_of_coordinates(c));
    std::vector<std::string> bad;
    for (std::size_t a = 0; a < coords.size() && bad.size() < 4; ++a)
      for (std::size_t b = 0; b < coords.size(); ++b) {
        // Product g_a g_b as functions: g_b acts first.
        if (compose(rules[b], rules[a]) != rule_of_coordinates(multiply(coords[a], coords[b]))) {
          bad.push_back(describe(rules[a]) + " * " + describe(rules[b]));
          break;
        }
      }
    add("multiplication follows the semidirect law", bad.empty(), bad);
  }
  return rep;
}

}  // namespace dposet
