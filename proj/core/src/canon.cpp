// Canonical form: the row-major adjacency string that is lexicographically
// smallest over all n! relabelings.
//
// The search fixes slots 0,1,2,... in order. After slots 0..k are fixed, the
// unfixed vertices sit in an ordered list of cells; every cell is homogeneous
// with respect to out-adjacency from each fixed vertex (non-neighbours are
// placed before neighbours, which is forced by minimality). Row k is then fully
// determined by the vertex chosen for slot k, so each level branches only over
// the candidates whose row is minimal. Vertices u, v whose transposition is an
// automorphism of the whole digraph give identical subtrees; one per class is
// explored.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "dposet/digraph.hpp"

namespace dposet {

namespace {

class CanonSearch {
 public:
  explicit CanonSearch(const Digraph& g) : g_(g), n_(g.size()) {
    twin_class_.resize(n_);
    for (int v = 0; v < n_; ++v) twin_class_[v] = v;
    for (int u = 0; u < n_; ++u) {
      if (twin_class_[u] != u) continue;
      for (int v = u + 1; v < n_; ++v)
        if (twin_class_[v] == v && twins(u, v)) twin_class_[v] = u;
    }
    perm_.resize(n_);
    rows_.resize(n_);
    best_.resize(n_);
  }

  std::vector<std::uint64_t> run() {
    std::vector<std::uint64_t> cells{g_.all_mask()};
    descend(0, cells);
    return best_;
  }

 private:
  bool twins(int u, int v) const {
    if (g_.loop(u) != g_.loop(v)) return false;
    if (g_.edge(u, v) != g_.edge(v, u)) return false;
    const std::uint64_t pair = (std::uint64_t{1} << u) | (std::uint64_t{1} << v);
    return (g_.out_mask(u) & ~pair) == (g_.out_mask(v) & ~pair) &&
           (g_.in_mask(u) & ~pair) == (g_.in_mask(v) & ~pair);
  }

  // Row for slot k when vertex v takes it; also produces the refined cells.
  std::uint64_t row_for(int k, int v, const std::vector<std::uint64_t>& cells,
                        std::vector<std::uint64_t>& refined) const {
    std::uint64_t row = 0;
    for (int j = 0; j < k; ++j) row = (row << 1) | (g_.edge(v, perm_[j]) ? 1u : 0u);
    row = (row << 1) | (g_.loop(v) ? 1u : 0u);
    refined.clear();
    const std::uint64_t out = g_.out_mask(v);
    const std::uint64_t vbit = std::uint64_t{1} << v;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::uint64_t cell = c == 0 ? (cells[0] & ~vbit) : cells[c];
      if (!cell) continue;
      const std::uint64_t zeros = cell & ~out;
      const std::uint64_t ones = cell & out;
      const int nz = std::popcount(zeros);
      const int no = std::popcount(ones);
      if (zeros) refined.push_back(zeros);
      if (ones) refined.push_back(ones);
      row <<= nz;
      for (int i = 0; i < no; ++i) row = (row << 1) | 1u;
    }
    return row;
  }

  // -1 / 0 / +1 comparing rows_[0..k] with best_[0..k].
  int compare_prefix(int k) const {
    if (!have_best_) return -1;
    for (int i = 0; i <= k; ++i) {
      if (rows_[i] < best_[i]) return -1;
      if (rows_[i] > best_[i]) return 1;
    }
    return 0;
  }

  void descend(int k, const std::vector<std::uint64_t>& cells) {
    if (k == n_) {
      if (compare_prefix(n_ - 1) < 0) {
        best_ = rows_;
        have_best_ = true;
      }
      return;
    }
    struct Candidate {
      int vertex;
      std::uint64_t row;
      std::vector<std::uint64_t> cells;
    };
    std::vector<Candidate> cands;
    std::uint64_t seen_classes = 0;
    std::uint64_t min_row = ~std::uint64_t{0};
    std::vector<std::uint64_t> refined;
    for (std::uint64_t c = cells[0]; c; c &= c - 1) {
      const int v = std::countr_zero(c);
      const std::uint64_t cls = std::uint64_t{1} << twin_class_[v];
      if (seen_classes & cls) continue;
      seen_classes |= cls;
      const std::uint64_t row = row_for(k, v, cells, refined);
      if (row > min_row) continue;
      if (row < min_row) {
        min_row = row;
        cands.clear();
      }
      cands.push_back({v, row, refined});
    }
    rows_[k] = min_row;
    if (compare_prefix(k) > 0) return;
    for (auto& cand : cands) {
      perm_[k] = cand.vertex;
      rows_[k] = cand.row;
      if (compare_prefix(k) > 0) return;
      descend(k + 1, cand.cells);
    }
  }

  const Digraph& g_;
  int n_;
  std::vector<int> twin_class_;
  std::vector<int> perm_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> best_;
  bool have_best_ = false;
};

}  // namespace

CanonCode canonical_form(const Digraph& g) {
  const int n = g.size();
  const auto rows = CanonSearch(g).run();
  std::string s = std::to_string(n) + ":";
  s.reserve(s.size() + n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.push_back(((rows[i] >> (n - 1 - j)) & 1u) ? '1' : '0');
  return CanonCode(std::move(s));
}

}  // namespace dposet
