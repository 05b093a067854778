#include "dposet/families.hpp"

#include <algorithm>
#include <charconv>

#include "dposet/error.hpp"

namespace dposet {

Digraph family(Family kind, int n) {
  if (n < 1) throw Error(Errc::BadSize, "family size must be positive");
  if (kind == Family::O && n < 3)
    throw Error(Errc::BadCircle, "circle O_" + std::to_string(n) + " needs at least 3 vertices");
  Digraph g(n);
  switch (kind) {
    case Family::E: break;
    case Family::F:
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) g.set_edge(u, v);
      break;
    case Family::I:
      for (int v = 0; v + 1 < n; ++v) g.set_edge(v, v + 1);
      break;
    case Family::O:
      for (int v = 0; v < n; ++v) g.set_edge(v, (v + 1) % n);
      break;
    case Family::L:
      for (int v = 0; v < n; ++v) g.set_edge(v, v);
      break;
  }
  return g;
}

Digraph l_arrow() { return Digraph::from_edges(2, {{0, 0}, {0, 1}}); }

Digraph arrow_link(const Digraph& g, ArrowDir dir) {
  const int n = g.size();
  const auto loops = g.loop_mask();
  if (dir == ArrowDir::FullToFree && loops != g.all_mask())
    throw Error(Errc::NotLoopFull, "G -> l(G) needs a loop-full G");
  if (dir == ArrowDir::FreeToFull && loops != 0)
    throw Error(Errc::NotLoopFree, "l(G) -> G needs a loop-free G");
  if (2 * n > Digraph::kMaxVertices)
    throw Error(Errc::TooLarge, "arrow link has " + std::to_string(2 * n) + " vertices");
  Digraph out(2 * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      if (g.edge(u, v)) {
        out.set_edge(u, v);
        out.set_edge(n + u, n + v);
      }
    }
  for (int v = 0; v < n; ++v) {
    if (dir == ArrowDir::FullToFree) {
      out.set_edge(v, v);
      out.set_edge(v, n + v);
    } else {
      out.set_edge(n + v, n + v);
      out.set_edge(n + v, v);
    }
  }
  return out;
}

Digraph male(int i, Box box) {
  if (i < 3) throw Error(Errc::BadCircle, "male gadget needs a circle of size >= 3");
  if (i + 2 > Digraph::kMaxVertices) throw Error(Errc::TooLarge, "male gadget too large");
  Digraph g(i + 2);
  for (int v = 0; v < i; ++v) g.set_edge(v, (v + 1) % i);
  g.set_edge(0, i);
  g.set_edge(i, i + 1);
  if (box == Box::Loop) g.set_edge(i + 1, i + 1);
  return g;
}

Digraph male_pair(int i, Box box, int j, Box tri, PairMode mode) {
  if (i == j) throw Error(Errc::EqualSizes, "male pair needs distinct circle sizes");
  Digraph g = disjoint_union(male(i, box), male(j, tri));
  const int u2 = i + 1;
  const int u2p = (i + 2) + j + 1;
  if (mode != PairMode::Union) g.set_edge(u2, u2p);
  if (mode == PairMode::Bi) g.set_edge(u2p, u2);
  return g;
}

Digraph circles(const std::vector<int>& sizes) {
  if (sizes.empty()) throw Error(Errc::BadCircle, "no circle sizes given");
  auto sorted = sizes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(Errc::BadCircle, "circle sizes must be distinct");
  long total = 0;
  for (int k : sizes) {
    if (k < 3) throw Error(Errc::BadCircle, "circle size " + std::to_string(k) + " < 3");
    total += k;
  }
  if (total > Digraph::kMaxVertices)
    throw Error(Errc::TooLarge, "circles need " + std::to_string(total) + " vertices");
  Digraph g(static_cast<int>(total));
  int off = 0;
  for (int k : sizes) {
    for (int v = 0; v < k; ++v) g.set_edge(off + v, off + (v + 1) % k);
    off += k;
  }
  return g;
}

namespace {

void check_bijection(const std::vector<int>& map, int n, const char* what) {
  if (static_cast<int>(map.size()) != n)
    throw Error(Errc::BadSpec, std::string(what) + " must have " + std::to_string(n) + " entries");
  std::vector<bool> hit(n, false);
  for (int x : map) {
    if (x < 0 || x >= n || hit[x])
      throw Error(Errc::BadSpec, std::string(what) + " is not a bijection");
    hit[x] = true;
  }
}

void check_increasing(const std::vector<int>& sizes, const char* what) {
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (sizes[k] < 3)
      throw Error(Errc::BadSpec, std::string(what) + ": circle size below 3");
    if (k > 0 && sizes[k] <= sizes[k - 1])
      throw Error(Errc::BadSpec, std::string(what) + " must be strictly increasing");
  }
}

}  // namespace

void validate(const AttachSpec& spec, const Digraph& g) {
  const int n = g.size();
  if (static_cast<int>(spec.circle_sizes.size()) != n)
    throw Error(Errc::BadSpec, "need " + std::to_string(n) + " circles, got " +
                                   std::to_string(spec.circle_sizes.size()));
  check_increasing(spec.circle_sizes, "circle_sizes");
  check_bijection(spec.alpha, n, "alpha");
}

Digraph attach(const Digraph& g, const AttachSpec& spec, AttachLayout* layout) {
  validate(spec, g);
  const int n = g.size();
  long total = 2L * n;
  for (int k : spec.circle_sizes) total += k;
  if (total > Digraph::kMaxVertices)
    throw Error(Errc::TooLarge, "attachment needs " + std::to_string(total) + " vertices");
  Digraph out(static_cast<int>(total));
  for (auto [u, v] : g.edges()) out.set_edge(u, v);
  AttachLayout lay;
  lay.g_vertices = n;
  int off = n;
  for (int k : spec.circle_sizes) {
    lay.circle_start.push_back(off);
    for (int v = 0; v < k; ++v) out.set_edge(off + v, off + (v + 1) % k);
    off += k;
  }
  for (int j = 0; j < n; ++j) {
    const int w = off + j;
    lay.pointer.push_back(w);
    out.set_edge(lay.circle_start[j], w);
    out.set_edge(w, spec.alpha[j]);
  }
  if (layout) *layout = std::move(lay);
  return out;
}

SupportSpec default_support_spec(const Digraph& g) {
  const int n = g.size();
  const int r = g.edge_count();
  SupportSpec spec;
  for (int k = 1; k <= n; ++k) spec.l_sizes.push_back(n * n + n + k);
  for (int k = 1; k <= r; ++k) spec.d_sizes.push_back(spec.l_sizes.back() + k);
  for (int j = 0; j < n; ++j) spec.alpha.push_back(j);
  for (int e = 0; e < r; ++e) spec.s_assignment.push_back(e);
  return spec;
}

void validate(const SupportSpec& spec, const Digraph& g) {
  const int n = g.size();
  const int r = g.edge_count();
  if (static_cast<int>(spec.l_sizes.size()) != n)
    throw Error(Errc::BadSpec, "need " + std::to_string(n) + " l sizes");
  check_increasing(spec.l_sizes, "l_sizes");
  if (spec.l_sizes.front() <= n * n + n)
    throw Error(Errc::BadSpec, "smallest l size must exceed n^2+n = " + std::to_string(n * n + n));
  if (static_cast<int>(spec.d_sizes.size()) != r)
    throw Error(Errc::BadSpec, "need " + std::to_string(r) + " d sizes, one per edge");
  if (r > 0) {
    check_increasing(spec.d_sizes, "d_sizes");
    if (spec.d_sizes.front() <= spec.l_sizes.back())
      throw Error(Errc::BadSpec, "every d size must exceed the largest l size");
  }
  check_bijection(spec.alpha, n, "alpha");
  check_bijection(spec.s_assignment, r, "s_assignment");
}

SupportConstruct edge_support(const Digraph& g, const SupportSpec& spec) {
  validate(spec, g);
  const int n = g.size();
  const auto edges = g.edges();
  const int r = static_cast<int>(edges.size());
  if (n + r > Digraph::kMaxVertices) throw Error(Errc::TooLarge, "G_s exceeds capacity");
  Digraph gs(n + r);
  for (auto [u, v] : edges) gs.set_edge(u, v);
  for (int e = 0; e < r; ++e) {
    gs.set_edge(edges[e].first, n + e);
    gs.set_edge(n + e, edges[e].second);
  }
  std::vector<int> sizes = spec.l_sizes;
  sizes.insert(sizes.end(), spec.d_sizes.begin(), spec.d_sizes.end());
  AttachSpec beta;
  beta.circle_sizes = sizes;
  beta.alpha = spec.alpha;
  for (int k = 0; k < r; ++k) beta.alpha.push_back(n + spec.s_assignment[k]);
  SupportConstruct out{gs, circles(sizes), Digraph(1), edges, {}, sizes};
  out.total = attach(gs, beta, &out.layout);
  return out;
}

namespace {

bool parse_int(std::string_view s, int& out) {
  if (s.empty() || s.size() > 4) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

Digraph resolve(std::string_view name) {
  if (name.empty()) throw Error(Errc::UnknownConstant, "empty constant name");
  if (name.front() == '#') {
    try {
      return CanonCode::parse(name.substr(1)).to_digraph();
    } catch (const Error& e) {
      throw Error(Errc::UnknownConstant, "'" + std::string(name) + "': " + e.what());
    }
  }
  if (name == "Larrow") return l_arrow();
  if (name.substr(0, 5) == "male:") {
    auto rest = name.substr(5);
    auto colon = rest.find(':');
    int i = 0;
    if (colon != std::string_view::npos && parse_int(rest.substr(0, colon), i)) {
      auto box = rest.substr(colon + 1);
      if (box == "0") return male(i, Box::Plain);
      if (box == "L") return male(i, Box::Loop);
    }
    throw Error(Errc::UnknownConstant, "malformed gadget name '" + std::string(name) + "'");
  }
  int n = 0;
  if (name.size() >= 2 && parse_int(name.substr(1), n)) {
    switch (name.front()) {
      case 'E': return family(Family::E, n);
      case 'F': return family(Family::F, n);
      case 'I': return family(Family::I, n);
      case 'O': return family(Family::O, n);
      case 'L': return family(Family::L, n);
      default: break;
    }
  }
  throw Error(Errc::UnknownConstant, "unknown constant '" + std::string(name) + "'");
}

}  // namespace

Digraph named_digraph(std::string_view name) {
  try {
    return resolve(name);
  } catch (const Error& e) {
    if (e.code() == Errc::UnknownConstant) throw;
    throw Error(Errc::UnknownConstant, "'" + std::string(name) + "': " + e.what());
  }
}

bool is_constant_name(std::string_view name) {
  try {
    named_digraph(name);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace dposet
