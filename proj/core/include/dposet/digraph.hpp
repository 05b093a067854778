#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dposet {

// A finite digraph on vertices 0..n-1 with loops allowed. Rows are stored as
// 64-bit masks, so the vertex count is capped at kMaxVertices.
class Digraph {
 public:
  static constexpr int kMaxVertices = 64;

  // Edgeless digraph on n vertices. Throws BadSize for n < 1 and TooLarge
  // beyond the capacity.
  explicit Digraph(int n);

  static Digraph from_edges(int n, std::span<const std::pair<int, int>> edges);
  static Digraph from_edges(int n,
                            std::initializer_list<std::pair<int, int>> edges);

  int size() const noexcept { return n_; }

  bool edge(int u, int v) const noexcept { return (out_[u] >> v) & 1u; }
  bool loop(int v) const noexcept { return edge(v, v); }

  std::uint64_t out_mask(int v) const noexcept { return out_[v]; }
  std::uint64_t in_mask(int v) const noexcept { return in_[v]; }
  std::uint64_t loop_mask() const noexcept;
  std::uint64_t all_mask() const noexcept;

  void set_edge(int u, int v, bool present = true);

  int edge_count() const noexcept;
  int loop_count() const noexcept;

  // Edge list in row-major order, loops included.
  std::vector<std::pair<int, int>> edges() const;

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  int n_;
  std::vector<std::uint64_t> out_;
  std::vector<std::uint64_t> in_;
};

// "<n>:<bits>" where bits is the row-major adjacency matrix that is
// lexicographically smallest over all vertex relabelings.
class CanonCode {
 public:
  CanonCode() = default;

  // Validates the "<n>:<bits>" shape only; canonicity is not checked.
  static CanonCode parse(std::string_view text);

  const std::string& text() const noexcept { return text_; }
  int vertex_count() const;
  Digraph to_digraph() const;

  friend auto operator<=>(const CanonCode&, const CanonCode&) = default;

 private:
  explicit CanonCode(std::string text) : text_(std::move(text)) {}
  friend CanonCode canonical_form(const Digraph& g);
  friend CanonCode labeled_code(const Digraph& g);

  std::string text_;
};

std::ostream& operator<<(std::ostream& os, const CanonCode& code);
std::ostream& operator<<(std::ostream& os, const Digraph& g);

CanonCode canonical_form(const Digraph& g);

// The code of the matrix exactly as labeled (not minimized).
CanonCode labeled_code(const Digraph& g);

bool is_isomorphic(const Digraph& g, const Digraph& h);

// g ⊑ h: g is isomorphic to an induced substructure of h.
bool is_substructure(const Digraph& g, const Digraph& h);

// g ≤ h: an injective map V(g) -> V(h) carrying edges to edges.
bool is_embeddable(const Digraph& g, const Digraph& h);

// Witness maps for the two orders: entry a is the image of pattern vertex a.
std::optional<std::vector<int>> find_substructure(const Digraph& g,
                                                  const Digraph& h);
std::optional<std::vector<int>> find_embedding(const Digraph& g,
                                               const Digraph& h);

// Restriction to the (0-based) vertex subset, in the order given.
Digraph induced(const Digraph& g, std::span<const int> subset);
Digraph induced_mask(const Digraph& g, std::uint64_t subset);

std::set<CanonCode> one_vertex_deletions(const Digraph& g);

Digraph disjoint_union(const Digraph& g, const Digraph& h);

enum class Transform { LoopExchange, Reverse, Complement };
Digraph unary_transform(const Digraph& g, Transform kind);

enum class LoopPart { Full, Free };
std::optional<Digraph> loop_part(const Digraph& g, LoopPart which);

int loop_free_degree(const Digraph& g, int v);

// Weakly connected components, ordered by their smallest vertex.
std::vector<Digraph> wccs(const Digraph& g);
std::vector<std::uint64_t> wcc_masks(const Digraph& g);

std::set<CanonCode> substructure_types(const Digraph& g, int k);

// True iff every weakly connected component is a line I_m or a circle O_m.
bool is_io(const Digraph& g);

// DGF text: vertex count, then n rows of n characters from {0,1}.
Digraph parse_dgf(std::string_view text);
Digraph read_dgf_file(const std::string& path);
std::string to_dgf(const Digraph& g);

}  // namespace dposet
