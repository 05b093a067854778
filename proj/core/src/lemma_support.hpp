#pragma once

// Helpers shared by the lemma verifiers; not installed.

#include <chrono>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "dposet/catalog.hpp"
#include "dposet/digraph.hpp"
#include "dposet/families.hpp"
#include "dposet/lemmas.hpp"

namespace dposet::detail {

// The ten two-vertex types by their customary letters.
Digraph pair_type(std::string_view letter);  // E P E' A B C D L Q L'
CanonCode pair_code(std::string_view letter);

int count_high_degree(const Digraph& g, int q);

// Canonical codes of all induced substructures with 1..k vertices.
std::set<CanonCode> small_types(const Digraph& g, int k);

bool sub(const Digraph& pattern, const Digraph& host);

Digraph lf_part_or_empty(const Digraph& g, LoopPart which);  // throws if absent

// Every IO-graph with at most max_n vertices (one per type), built from
// component lists.
std::vector<Digraph> io_universe(int max_n);

// Structural key of an IO-graph: its sorted component list, e.g. "I1 I1 O3".
std::string io_key(const Digraph& g);

int param_int(const Params& p, const std::string& key, int fallback);
std::vector<int> param_ints(const Params& p, const std::string& key, std::vector<int> fallback);
std::string param_str(const Params& p, const std::string& key, const std::string& fallback);

// Names like E2, Larrow, male:4:0, #code, or a pair letter prefixed with '@'.
Digraph param_graph(const std::string& name);

std::string code_of(const Digraph& g);

// Runs body and stamps id, mode, params, elapsed time.
LemmaReport timed(const std::string& id, LemmaMode mode, const Params& params,
                  const std::function<void(LemmaReport&)>& body);

// Universe lemmas.
void lemma_io_def(LemmaReport& r, int bound, int margin);
void lemma_io_char(LemmaReport& r, int bound, int margin, const Params& p);
void lemma_circles_set(LemmaReport& r, int bound, int margin, const Params& p);
void lemma_loop_parts(LemmaReport& r, int bound, int margin);
void lemma_same_size(LemmaReport& r, int bound, int margin);
void lemma_distinct_circles(LemmaReport& r, int bound, int margin, const Params& p);
void lemma_certificate(LemmaReport& r, int bound, int margin, const Params& p);

// Targeted lemmas.
void lemma_arrow_rel(LemmaReport& r, const Params& p);
void lemma_addition(LemmaReport& r, const Params& p);
void lemma_multiplication(LemmaReport& r, const Params& p);
void lemma_io_union(LemmaReport& r, const Params& p);
void lemma_counted_attach(LemmaReport& r, const Params& p);
void lemma_circle_count(LemmaReport& r, const Params& p);
void lemma_gn_part(LemmaReport& r, const Params& p);
void lemma_union_with_circles(LemmaReport& r, const Params& p);
void lemma_male_rel(LemmaReport& r, const Params& p);
void lemma_attach_rel(LemmaReport& r, const Params& p);
void lemma_support_rel(LemmaReport& r, const Params& p);
void lemma_main_theorem(LemmaReport& r, const Params& p);

// Two looped vertices both pointing to one plain vertex, or one looped vertex
// pointing to two plain vertices, with every choice of edges inside the pair
// that has no solid edge (six types).
std::set<CanonCode> arrow_pictures();
// The second shape above with no edge between the plain pair.
Digraph loop_to_two_plain();
// Looped a1,a2 and plain b1,b2 with a1->b1, a2->b2 where the edges among the
// a's and among the b's do not correspond.
std::set<CanonCode> asymmetric_squares();

// Conditions reused across lemmas.
bool attach_conditions(const Digraph& g, const Digraph& o_star, const std::vector<int>& sizes,
                       const Digraph& x, std::string* failed = nullptr);

}  // namespace dposet::detail
