// Backtracking search for induced (⊑) and non-induced (≤) copies of a pattern
// inside a host. Pattern vertices are placed in a connectivity-first order so
// that most candidates are cut by adjacency masks to already placed vertices;
// loop bits and loop-free in/out degrees filter the rest.

#include <bit>
#include <cstdint>
#include <vector>

#include "dposet/digraph.hpp"

namespace dposet {

namespace {

std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

int lf_out(const Digraph& g, int v) { return std::popcount(g.out_mask(v) & ~bit(v)); }
int lf_in(const Digraph& g, int v) { return std::popcount(g.in_mask(v) & ~bit(v)); }

class Matcher {
 public:
  Matcher(const Digraph& pattern, const Digraph& host, bool induced)
      : p_(pattern), h_(host), induced_(induced) {}

  std::optional<std::vector<int>> run() {
    const int pn = p_.size();
    const int hn = h_.size();
    if (pn > hn) return std::nullopt;
    if (!quick_reject()) return std::nullopt;

    order_pattern();
    base_.assign(pn, 0);
    for (int a = 0; a < pn; ++a) {
      const int po = lf_out(p_, a), pi = lf_in(p_, a);
      const bool pl = p_.loop(a);
      std::uint64_t m = 0;
      for (int x = 0; x < hn; ++x) {
        const bool hl = h_.loop(x);
        if (induced_ ? (hl != pl) : (pl && !hl)) continue;
        if (lf_out(h_, x) < po || lf_in(h_, x) < pi) continue;
        m |= bit(x);
      }
      if (!m) return std::nullopt;
      base_[a] = m;
    }
    image_.assign(pn, -1);
    if (!place(0, 0)) return std::nullopt;
    return image_;
  }

 private:
  bool quick_reject() const {
    const int pl = p_.loop_count(), hl = h_.loop_count();
    if (pl > hl) return false;
    if (induced_ && p_.size() - pl > h_.size() - hl) return false;
    if (p_.edge_count() > h_.edge_count()) return false;
    return true;
  }

  void order_pattern() {
    const int pn = p_.size();
    std::vector<int> weight(pn);
    for (int a = 0; a < pn; ++a)
      weight[a] = lf_out(p_, a) + lf_in(p_, a) + (p_.loop(a) ? 1 : 0);
    std::uint64_t placed = 0;
    order_.clear();
    while (static_cast<int>(order_.size()) < pn) {
      int best = -1, best_links = -1;
      for (int a = 0; a < pn; ++a) {
        if (placed & bit(a)) continue;
        const int links =
            std::popcount((p_.out_mask(a) | p_.in_mask(a)) & placed & ~bit(a));
        if (links > best_links || (links == best_links && weight[a] > weight[best])) {
          best = a;
          best_links = links;
        }
      }
      order_.push_back(best);
      placed |= bit(best);
    }
  }

  bool place(int t, std::uint64_t used) {
    if (t == static_cast<int>(order_.size())) return true;
    const int a = order_[t];
    std::uint64_t cand = base_[a] & ~used;
    for (int s = 0; s < t && cand; ++s) {
      const int b = order_[s];
      const int y = image_[b];
      const bool ab = p_.edge(a, b), ba = p_.edge(b, a);
      // x -> y in host  <=>  x in in_mask(y);  y -> x  <=>  x in out_mask(y)
      if (induced_) {
        cand &= ab ? h_.in_mask(y) : ~h_.in_mask(y);
        cand &= ba ? h_.out_mask(y) : ~h_.out_mask(y);
      } else {
        if (ab) cand &= h_.in_mask(y);
        if (ba) cand &= h_.out_mask(y);
      }
    }
    for (; cand; cand &= cand - 1) {
      const int x = std::countr_zero(cand);
      image_[a] = x;
      if (place(t + 1, used | bit(x))) return true;
    }
    image_[a] = -1;
    return false;
  }

  const Digraph& p_;
  const Digraph& h_;
  bool induced_;
  std::vector<int> order_;
  std::vector<std::uint64_t> base_;
  std::vector<int> image_;
};

}  // namespace

std::optional<std::vector<int>> find_substructure(const Digraph& g, const Digraph& h) {
  return Matcher(g, h, true).run();
}

std::optional<std::vector<int>> find_embedding(const Digraph& g, const Digraph& h) {
  return Matcher(g, h, false).run();
}

bool is_substructure(const Digraph& g, const Digraph& h) {
  return find_substructure(g, h).has_value();
}

bool is_embeddable(const Digraph& g, const Digraph& h) {
  return find_embedding(g, h).has_value();
}

bool is_isomorphic(const Digraph& g, const Digraph& h) {
  if (g.size() != h.size() || g.edge_count() != h.edge_count()) return false;
  return is_substructure(g, h);
}

}  // namespace dposet
