#include "dposet/digraph.hpp"

#include <bit>
#include <ostream>

#include "dposet/error.hpp"

namespace dposet {

namespace {

std::uint64_t low_bits(int n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

}  // namespace

Digraph::Digraph(int n) : n_(n) {
  if (n < 1) throw Error(Errc::BadSize, "a digraph needs at least one vertex");
  if (n > kMaxVertices)
    throw Error(Errc::TooLarge, std::to_string(n) + " vertices exceed capacity " +
                                    std::to_string(kMaxVertices));
  out_.assign(n, 0);
  in_.assign(n, 0);
}

Digraph Digraph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  Digraph g(n);
  for (auto [u, v] : edges) g.set_edge(u, v);
  return g;
}

Digraph Digraph::from_edges(int n,
                            std::initializer_list<std::pair<int, int>> edges) {
  return from_edges(n, std::span<const std::pair<int, int>>(edges.begin(),
                                                            edges.size()));
}

std::uint64_t Digraph::loop_mask() const noexcept {
  std::uint64_t m = 0;
  for (int v = 0; v < n_; ++v)
    if (loop(v)) m |= std::uint64_t{1} << v;
  return m;
}

std::uint64_t Digraph::all_mask() const noexcept { return low_bits(n_); }

void Digraph::set_edge(int u, int v, bool present) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw Error(Errc::BadSize, "edge endpoint out of range");
  const std::uint64_t bu = std::uint64_t{1} << u;
  const std::uint64_t bv = std::uint64_t{1} << v;
  if (present) {
    out_[u] |= bv;
    in_[v] |= bu;
  } else {
    out_[u] &= ~bv;
    in_[v] &= ~bu;
  }
}

int Digraph::edge_count() const noexcept {
  int c = 0;
  for (auto row : out_) c += std::popcount(row);
  return c;
}

int Digraph::loop_count() const noexcept { return std::popcount(loop_mask()); }

std::vector<std::pair<int, int>> Digraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v)
      if (edge(u, v)) out.emplace_back(u, v);
  return out;
}

CanonCode CanonCode::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0)
    throw Error(Errc::BadFormat, "code '" + std::string(text) + "' lacks '<n>:'");
  int n = 0;
  for (char c : text.substr(0, colon)) {
    if (c < '0' || c > '9')
      throw Error(Errc::BadFormat, "bad vertex count in '" + std::string(text) + "'");
    n = n * 10 + (c - '0');
    if (n > Digraph::kMaxVertices)
      throw Error(Errc::TooLarge, "code '" + std::string(text) + "' is too large");
  }
  if (n < 1) throw Error(Errc::BadFormat, "code with zero vertices");
  const auto bits = text.substr(colon + 1);
  if (bits.size() != static_cast<std::size_t>(n) * n)
    throw Error(Errc::BadFormat, "code '" + std::string(text) + "' needs " +
                                     std::to_string(n * n) + " bits");
  for (char c : bits)
    if (c != '0' && c != '1')
      throw Error(Errc::BadFormat, "non-binary digit in '" + std::string(text) + "'");
  return CanonCode(std::string(text));
}

int CanonCode::vertex_count() const {
  return std::stoi(text_.substr(0, text_.find(':')));
}

Digraph CanonCode::to_digraph() const {
  const int n = vertex_count();
  const auto bits = std::string_view(text_).substr(text_.find(':') + 1);
  Digraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (bits[u * n + v] == '1') g.set_edge(u, v);
  return g;
}

std::ostream& operator<<(std::ostream& os, const CanonCode& code) {
  return os << code.text();
}

std::ostream& operator<<(std::ostream& os, const Digraph& g) {
  return os << labeled_code(g).text();
}

CanonCode labeled_code(const Digraph& g) {
  const int n = g.size();
  std::string s = std::to_string(n) + ":";
  s.reserve(s.size() + n * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) s.push_back(g.edge(u, v) ? '1' : '0');
  return CanonCode(std::move(s));
}

Digraph induced(const Digraph& g, std::span<const int> subset) {
  if (subset.empty()) throw Error(Errc::EmptySubset, "induced on an empty vertex set");
  std::uint64_t seen = 0;
  for (int v : subset) {
    if (v < 0 || v >= g.size())
      throw Error(Errc::BadSubset, "vertex " + std::to_string(v + 1) + " out of range");
    if ((seen >> v) & 1u)
      throw Error(Errc::BadSubset, "vertex " + std::to_string(v + 1) + " repeated");
    seen |= std::uint64_t{1} << v;
  }
  const int k = static_cast<int>(subset.size());
  Digraph h(k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (g.edge(subset[a], subset[b])) h.set_edge(a, b);
  return h;
}

Digraph induced_mask(const Digraph& g, std::uint64_t subset) {
  std::vector<int> verts;
  for (int v = 0; v < g.size(); ++v)
    if ((subset >> v) & 1u) verts.push_back(v);
  return induced(g, verts);
}

std::set<CanonCode> one_vertex_deletions(const Digraph& g) {
  const int n = g.size();
  if (n < 2) throw Error(Errc::NoDeletion, "a one-vertex digraph has no deletions");
  std::set<CanonCode> out;
  std::vector<int> keep(n - 1);
  for (int drop = 0; drop < n; ++drop) {
    for (int v = 0, k = 0; v < n; ++v)
      if (v != drop) keep[k++] = v;
    out.insert(canonical_form(induced(g, keep)));
  }
  return out;
}

Digraph disjoint_union(const Digraph& g, const Digraph& h) {
  const int n = g.size() + h.size();
  if (n > Digraph::kMaxVertices)
    throw Error(Errc::TooLarge, "disjoint union has " + std::to_string(n) + " vertices");
  Digraph u(n);
  for (auto [a, b] : g.edges()) u.set_edge(a, b);
  for (auto [a, b] : h.edges()) u.set_edge(g.size() + a, g.size() + b);
  return u;
}

Digraph unary_transform(const Digraph& g, Transform kind) {
  const int n = g.size();
  Digraph out(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      bool e = false;
      switch (kind) {
        case Transform::LoopExchange: e = (u == v) ? !g.edge(u, v) : g.edge(u, v); break;
        case Transform::Reverse: e = g.edge(v, u); break;
        case Transform::Complement: e = !g.edge(u, v); break;
      }
      if (e) out.set_edge(u, v);
    }
  return out;
}

std::optional<Digraph> loop_part(const Digraph& g, LoopPart which) {
  const std::uint64_t loops = g.loop_mask();
  const std::uint64_t keep = which == LoopPart::Full ? loops : (g.all_mask() & ~loops);
  if (keep == 0) return std::nullopt;
  return induced_mask(g, keep);
}

int loop_free_degree(const Digraph& g, int v) {
  if (v < 0 || v >= g.size()) throw Error(Errc::BadSize, "vertex out of range");
  const std::uint64_t self = std::uint64_t{1} << v;
  return std::popcount(g.out_mask(v) & ~self) + std::popcount(g.in_mask(v) & ~self);
}

std::vector<std::uint64_t> wcc_masks(const Digraph& g) {
  std::vector<std::uint64_t> comps;
  std::uint64_t unseen = g.all_mask();
  while (unseen) {
    std::uint64_t comp = unseen & (~unseen + 1);
    std::uint64_t frontier = comp;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) {
        const int v = std::countr_zero(f);
        next |= g.out_mask(v) | g.in_mask(v);
      }
      frontier = next & ~comp;
      comp |= next;
    }
    comps.push_back(comp);
    unseen &= ~comp;
  }
  return comps;
}

std::vector<Digraph> wccs(const Digraph& g) {
  std::vector<Digraph> out;
  for (auto m : wcc_masks(g)) out.push_back(induced_mask(g, m));
  return out;
}

std::set<CanonCode> substructure_types(const Digraph& g, int k) {
  const int n = g.size();
  if (k < 1 || k > n)
    throw Error(Errc::BadSize, "substructure size " + std::to_string(k) +
                                   " outside 1.." + std::to_string(n));
  std::set<CanonCode> out;
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    out.insert(canonical_form(induced(g, pick)));
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

bool is_io(const Digraph& g) {
  if (g.loop_mask() != 0) return false;
  for (auto comp : wcc_masks(g)) {
    const int m = std::popcount(comp);
    int edges = 0;
    bool bounded = true;
    for (std::uint64_t c = comp; c; c &= c - 1) {
      const int v = std::countr_zero(c);
      const int out = std::popcount(g.out_mask(v));
      const int in = std::popcount(g.in_mask(v));
      if (out > 1 || in > 1) bounded = false;
      edges += out;
    }
    if (!bounded) return false;
    // Connected with in/out degree <= 1: a directed path (m-1 edges) or a
    // directed cycle (m edges); 2-cycles are not circles.
    if (edges == m - 1) continue;
    if (edges == m && m >= 3) continue;
    return false;
  }
  return true;
}

}  // namespace dposet
