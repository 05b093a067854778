#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dposet/digraph.hpp"
#include "dposet/fo.hpp"

// Independent reference implementations. Nothing here calls the library's
// search or canonical-form code.
namespace oracle {

using dposet::Digraph;

// Minimum row-major matrix over all n! relabelings, as "<n>:<bits>".
std::string brute_canon(const Digraph& g);

// Try every injection V(g) -> V(h).
bool brute_sub(const Digraph& g, const Digraph& h);
bool brute_emb(const Digraph& g, const Digraph& h);

// All 2^(n*n) matrices deduplicated by brute_canon.
std::set<std::string> brute_level(int n);

Digraph random_digraph(std::mt19937_64& rng, int n, double p = 0.5);
Digraph relabel(const Digraph& g, const std::vector<int>& perm);  // perm[v] = new label
std::vector<int> random_perm(std::mt19937_64& rng, int n);

// Quantifiers over the given elements; atoms decided with brute_sub/brute_emb.
bool naive_eval(const dposet::fo::Formula& f, const std::vector<Digraph>& universe, bool emb,
                const std::map<std::string, Digraph>& env);

// Random formula over the variable pool, with constants from the list.
dposet::fo::FormulaPtr random_formula(std::mt19937_64& rng, int depth, const std::vector<std::string>& free_vars,
                                      const std::vector<std::string>& constants);

}  // namespace oracle
