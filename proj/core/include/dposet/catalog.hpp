#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dposet/digraph.hpp"

namespace dposet {

inline constexpr int kDefaultMaxLevel = 4;
inline constexpr int kExtendedMaxLevel = 5;

struct Level {
  int n = 0;
  std::vector<CanonCode> members;  // sorted, duplicate-free

  friend bool operator==(const Level&, const Level&) = default;
};

struct CoverPair {
  CanonCode lower;
  CanonCode upper;

  friend auto operator<=>(const CoverPair&, const CoverPair&) = default;
};

struct Catalog {
  int max_n = 0;
  std::vector<Level> levels;  // levels[k].n == k + 1
  std::vector<CoverPair> sub_covers;
  std::vector<CoverPair> emb_covers;

  std::vector<CanonCode> all() const;

  friend bool operator==(const Catalog&, const Catalog&) = default;
};

// Every isomorphism type on n vertices, one canonical code each, sorted.
// n above kDefaultMaxLevel needs allow_extended (and n <= kExtendedMaxLevel).
Level enumerate_level(int n, bool allow_extended = false);

Catalog build_catalog(int max_n, bool allow_extended = false);

// Lower covers in the embeddability order: one edge removed, or one vertex
// without any incident edge or loop removed.
std::vector<CanonCode> emb_lower_covers(const Digraph& g);

// |V| + |E|.
int emb_grade(const Digraph& g);
int emb_grade(const CanonCode& code);

// Process-wide memo of build_catalog; thread-safe.
const Catalog& shared_catalog(int max_n);

enum class ExportWhat { HasseSub, HasseEmb, Levels };
enum class ExportFormat { Dot, Json };

// max_level <= 0 means the catalog's own bound. For HasseEmb the level is the
// grade |V|+|E|; every element of grade <= max_n is stored, so the exported
// diagram is exact up to grade min(max_level, max_n).
std::string export_catalog(const Catalog& catalog, ExportWhat what, ExportFormat format,
                           int max_level = 0);

std::filesystem::path default_cache_dir();
void save_cache(const Catalog& catalog, const std::filesystem::path& dir);
Catalog load_cache(const std::filesystem::path& dir);

// Loads the cache when it covers max_n, otherwise builds and rewrites it.
Catalog load_or_build(int max_n, const std::filesystem::path& dir, bool allow_extended = false);

enum class Order { Sub, Emb };

// Elements of a catalog up to a vertex bound with a precomputed order
// relation (down-set bitmaps).
class Poset {
 public:
  Poset(const Catalog& catalog, Order order, int bound);

  int size() const noexcept { return static_cast<int>(elements_.size()); }
  Order order() const noexcept { return order_; }
  int bound() const noexcept { return bound_; }
  const std::vector<CanonCode>& elements() const noexcept { return elements_; }
  const CanonCode& element(int i) const { return elements_[i]; }
  std::optional<int> index_of(const CanonCode& code) const;

  // a <= b in the selected order.
  bool leq(int a, int b) const noexcept {
    return (down_[b][a >> 6] >> (a & 63)) & 1u;
  }

 private:
  Order order_;
  int bound_;
  std::vector<CanonCode> elements_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<std::uint64_t>> down_;
};

// Process-wide memo of Poset(shared_catalog(max_n), order, max_n).
const Poset& shared_poset(int max_n, Order order);

}  // namespace dposet
