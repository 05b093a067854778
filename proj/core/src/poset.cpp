#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "dposet/catalog.hpp"
#include "dposet/error.hpp"

namespace dposet {

Poset::Poset(const Catalog& catalog, Order order, int bound) : order_(order), bound_(bound) {
  if (bound < 1 || bound > catalog.max_n)
    throw Error(Errc::BadSize, "universe bound " + std::to_string(bound) +
                                   " outside the catalog range 1.." + std::to_string(catalog.max_n));
  for (const auto& level : catalog.levels) {
    if (level.n > bound) break;
    elements_.insert(elements_.end(), level.members.begin(), level.members.end());
  }
  const int n = size();
  for (int i = 0; i < n; ++i) index_.emplace(elements_[i].text(), i);
  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  down_.assign(n, std::vector<std::uint64_t>(words, 0));
  auto set = [&](int upper, int lower) { down_[upper][lower >> 6] |= std::uint64_t{1} << (lower & 63); };

  if (order == Order::Sub) {
    for (int i = 0; i < n; ++i) {
      const Digraph g = elements_[i].to_digraph();
      for (std::uint64_t s = 1; s <= g.all_mask(); ++s) set(i, index_.at(canonical_form(induced_mask(g, s)).text()));
    }
    return;
  }

  // Embeddability: close the cover relation in grade order.
  std::vector<std::vector<int>> lower(n);
  for (const auto& p : catalog.emb_covers) {
    auto hi = index_of(p.upper), lo = index_of(p.lower);
    if (hi && lo) lower[*hi].push_back(*lo);
  }
  std::vector<int> by_grade(n);
  for (int i = 0; i < n; ++i) by_grade[i] = i;
  std::vector<int> grade(n);
  for (int i = 0; i < n; ++i) grade[i] = emb_grade(elements_[i]);
  std::stable_sort(by_grade.begin(), by_grade.end(), [&](int a, int b) { return grade[a] < grade[b]; });
  for (int i : by_grade) {
    set(i, i);
    for (int lo : lower[i])
      for (std::size_t w = 0; w < words; ++w) down_[i][w] |= down_[lo][w];
  }
}

std::optional<int> Poset::index_of(const CanonCode& code) const {
  auto it = index_.find(code.text());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Poset& shared_poset(int max_n, Order order) {
  static std::mutex mu;
  static std::map<std::pair<int, Order>, std::unique_ptr<Poset>> memo;
  const Catalog& catalog = shared_catalog(max_n);
  std::lock_guard lock(mu);
  auto& slot = memo[{max_n, order}];
  if (!slot) slot = std::make_unique<Poset>(catalog, order, max_n);
  return *slot;
}

}  // namespace dposet
