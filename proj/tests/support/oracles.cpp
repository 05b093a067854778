#include "oracles.hpp"

#include <algorithm>
#include <numeric>

namespace oracle {

namespace {

std::string matrix_bits(const Digraph& g, const std::vector<int>& order) {
  // order[k] is the vertex placed at position k.
  std::string bits;
  for (int a : order)
    for (int b : order) bits += g.edge(a, b) ? '1' : '0';
  return bits;
}

template <typename Accept>
bool any_injection(int k, int n, std::vector<int>& map, std::vector<bool>& used, const Accept& accept) {
  if (static_cast<int>(map.size()) == k) return accept(map);
  for (int v = 0; v < n; ++v) {
    if (used[v]) continue;
    used[v] = true;
    map.push_back(v);
    const bool hit = any_injection(k, n, map, used, accept);
    map.pop_back();
    used[v] = false;
    if (hit) return true;
  }
  return false;
}

bool brute_leq(const Digraph& g, const Digraph& h, bool induced) {
  if (g.size() > h.size()) return false;
  std::vector<int> map;
  std::vector<bool> used(h.size(), false);
  return any_injection(g.size(), h.size(), map, used, [&](const std::vector<int>& m) {
    for (int a = 0; a < g.size(); ++a)
      for (int b = 0; b < g.size(); ++b) {
        const bool ge = g.edge(a, b), he = h.edge(m[a], m[b]);
        if (induced ? ge != he : (ge && !he)) return false;
      }
    return true;
  });
}

}  // namespace

std::string brute_canon(const Digraph& g) {
  std::vector<int> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::string best = matrix_bits(g, order);
  while (std::next_permutation(order.begin(), order.end())) best = std::min(best, matrix_bits(g, order));
  return std::to_string(g.size()) + ":" + best;
}

bool brute_sub(const Digraph& g, const Digraph& h) { return brute_leq(g, h, true); }
bool brute_emb(const Digraph& g, const Digraph& h) { return brute_leq(g, h, false); }

std::set<std::string> brute_level(int n) {
  std::set<std::string> out;
  const std::uint64_t count = std::uint64_t{1} << (n * n);
  for (std::uint64_t m = 0; m < count; ++m) {
    Digraph g(n);
    for (int k = 0; k < n * n; ++k)
      if ((m >> k) & 1) g.set_edge(k / n, k % n);
    out.insert(brute_canon(g));
  }
  return out;
}

Digraph random_digraph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  Digraph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (coin(rng)) g.set_edge(a, b);
  return g;
}

Digraph relabel(const Digraph& g, const std::vector<int>& perm) {
  Digraph out(g.size());
  for (const auto& [a, b] : g.edges()) out.set_edge(perm[a], perm[b]);
  return out;
}

std::vector<int> random_perm(std::mt19937_64& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

bool naive_eval(const dposet::fo::Formula& f, const std::vector<Digraph>& universe, bool emb,
                const std::map<std::string, Digraph>& env) {
  using dposet::fo::Kind;
  auto value = [&](const dposet::fo::Term& t) { return t.is_var ? env.at(t.name) : t.code.to_digraph(); };
  auto kid = [&](int i, const std::map<std::string, Digraph>& e) { return naive_eval(*f.kids[i], universe, emb, e); };
  switch (f.kind) {
    case Kind::Leq: {
      const Digraph a = value(f.lhs), b = value(f.rhs);
      return emb ? brute_emb(a, b) : brute_sub(a, b);
    }
    case Kind::Eq:
      return brute_canon(value(f.lhs)) == brute_canon(value(f.rhs));
    case Kind::Not: return !kid(0, env);
    case Kind::And: return kid(0, env) && kid(1, env);
    case Kind::Or: return kid(0, env) || kid(1, env);
    case Kind::Implies: return !kid(0, env) || kid(1, env);
    case Kind::Iff: return kid(0, env) == kid(1, env);
    case Kind::Forall:
    case Kind::Exists: {
      const bool exists = f.kind == Kind::Exists;
      for (const auto& g : universe) {
        auto e = env;
        e.insert_or_assign(f.var, g);
        if (kid(0, e) == exists) return exists;
      }
      return !exists;
    }
  }
  return false;
}

dposet::fo::FormulaPtr random_formula(std::mt19937_64& rng, int depth, const std::vector<std::string>& free_vars,
                                      const std::vector<std::string>& constants) {
  using namespace dposet::fo;
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto term = [&]() {
    if (!free_vars.empty() && (constants.empty() || rng() % 3)) return variable(free_vars[pick(free_vars.size())]);
    return constant(constants[pick(constants.size())]);
  };
  if (depth <= 0 || rng() % 4 == 0) {
    const Kind k = rng() % 3 ? Kind::Leq : Kind::Eq;
    return atom(k, term(), term());
  }
  switch (rng() % 6) {
    case 0: return neg(random_formula(rng, depth - 1, free_vars, constants));
    case 1:
    case 2: {
      // Fresh name so no binder shadows an enclosing one.
      const std::string v = "v" + std::to_string(free_vars.size());
      auto vars = free_vars;
      vars.push_back(v);
      return quant(rng() % 2 ? Kind::Forall : Kind::Exists, v, random_formula(rng, depth - 1, vars, constants));
    }
    default: {
      static const Kind ops[] = {Kind::And, Kind::Or, Kind::Implies, Kind::Iff};
      return binary(ops[pick(4)], random_formula(rng, depth - 1, free_vars, constants),
                    random_formula(rng, depth - 1, free_vars, constants));
    }
  }
}

}  // namespace oracle
