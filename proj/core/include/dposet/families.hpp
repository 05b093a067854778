#pragma once

#include <string_view>
#include <vector>

#include "dposet/digraph.hpp"

namespace dposet {

enum class Family { E, F, I, O, L };

// E_n empty, F_n full (loops included), I_n line, O_n circle (n >= 3),
// L_n loops only.
Digraph family(Family kind, int n);

// Vertices {1,2}, edges (1,1), (1,2).
Digraph l_arrow();

// FullToFree takes a loop-full G and returns G -> l(G); FreeToFull takes a
// loop-free G and returns l(G) -> G. In both cases the matching edges run from
// the loop-full copy to the loop-free one. Vertices 0..n-1 are G, n..2n-1 the
// loop-exchanged copy.
enum class ArrowDir { FullToFree, FreeToFull };
Digraph arrow_link(const Digraph& g, ArrowDir dir);

enum class Box { Plain, Loop };

// O_i on 0..i-1 (vertex 0 is v_1), then u_1 = i, u_2 = i+1.
Digraph male(int i, Box box);

// Union: disjoint; To: adds u_2 -> u'_2; Bi: both directions.
// The first gadget occupies 0..i+1, the second i+2..i+j+3.
enum class PairMode { Union, To, Bi };
Digraph male_pair(int i, Box box, int j, Box tri, PairMode mode);

// Disjoint union of circles; sizes must be distinct and >= 3.
Digraph circles(const std::vector<int>& sizes);

struct AttachSpec {
  std::vector<int> circle_sizes;  // strictly increasing, each >= 3
  std::vector<int> alpha;         // alpha[j]: 0-based vertex of G for circle j
};

// Vertex layout of G <-alpha- O*.
struct AttachLayout {
  int g_vertices = 0;
  std::vector<int> circle_start;  // first vertex (u_1) of circle j
  std::vector<int> pointer;       // w_j
};

void validate(const AttachSpec& spec, const Digraph& g);
Digraph attach(const Digraph& g, const AttachSpec& spec, AttachLayout* layout = nullptr);

struct SupportSpec {
  std::vector<int> l_sizes;       // one per vertex, l_1 > n^2 + n
  std::vector<int> d_sizes;       // one per edge, each > l_n
  std::vector<int> alpha;         // alpha[j]: vertex for circle l_j
  std::vector<int> s_assignment;  // s_assignment[k]: edge index for circle d_k
};

// l = n^2+n+1 .. n^2+2n, d = l_n+1 .. l_n+r, identity alpha and s.
SupportSpec default_support_spec(const Digraph& g);
void validate(const SupportSpec& spec, const Digraph& g);

struct SupportConstruct {
  Digraph g_s;
  Digraph o_s;
  Digraph total;
  // Edges of G in row-major order; support vertex of edge e is n + e.
  std::vector<std::pair<int, int>> edges;
  AttachLayout layout;  // of total = G_s <-beta- O*_s
  std::vector<int> circle_sizes;  // l_sizes then d_sizes
};

SupportConstruct edge_support(const Digraph& g, const SupportSpec& spec);

// Named constants: E<n>, F<n>, I<n>, O<n>, L<n>, Larrow, male:<i>:<0|L>,
// and #<code>. Throws UnknownConstant otherwise.
Digraph named_digraph(std::string_view name);
bool is_constant_name(std::string_view name);

}  // namespace dposet
