#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dposet/catalog.hpp"
#include "dposet/digraph.hpp"

namespace dposet {

// Labeled pair index for vertices (a, b): bit 0 loop on a, bit 1 loop on b,
// bit 2 edge a->b, bit 3 edge b->a.
constexpr int pair_index(bool la, bool lb, bool ab, bool ba) {
  return (la ? 1 : 0) | (lb ? 2 : 0) | (ab ? 4 : 0) | (ba ? 8 : 0);
}
constexpr int swap_pair(int idx) {
  return ((idx & 1) << 1) | ((idx >> 1) & 1) | ((idx & 4) << 1) | ((idx >> 1) & 4);
}

// A permutation of the mixed two-vertex types A, B, C, D (indices 0..3):
// perm[X] is the image of X.
using TypePerm = std::array<int, 4>;

// Parses "(AB)(CD)" cycle notation or "BACD" one-line notation.
TypePerm parse_type_perm(std::string_view text);
std::string type_perm_name(const TypePerm& p);  // one-line form
TypePerm compose_perm(const TypePerm& outer, const TypePerm& inner);  // outer after inner

class LocalRule {
 public:
  using Table = std::array<std::uint8_t, 18>;  // vmap[0..1], pmap[0..15]

  static LocalRule identity();
  // Throws BadPermutation when the tables violate a rule invariant.
  static LocalRule from_tables(std::array<std::uint8_t, 2> vmap, std::array<std::uint8_t, 16> pmap);
  // No invariant checks; used for negative controls.
  static LocalRule unchecked(std::array<std::uint8_t, 2> vmap, std::array<std::uint8_t, 16> pmap);

  int vmap(int loop_bit) const { return table_[loop_bit]; }
  int pmap(int idx) const { return table_[2 + idx]; }
  const Table& table() const { return table_; }

  friend auto operator<=>(const LocalRule&, const LocalRule&) = default;

 private:
  Table table_{};
};

// Empty when all invariants hold, else a description of the first violation.
std::optional<std::string> rule_violation(const LocalRule& r);

// "phi1".."phi5", "pi:<perm>", "id".
LocalRule rule_of_generator(std::string_view name);
LocalRule pi_rule(const TypePerm& p);

// Loops via vmap, every unordered pair via pmap of its original type.
Digraph apply(const LocalRule& r, const Digraph& g);
CanonCode apply_type(const LocalRule& r, const CanonCode& code);

// r1 first, then r2.
LocalRule compose(const LocalRule& r1, const LocalRule& r2);
LocalRule inverse(const LocalRule& r);

// Composition-closed set generated by the rules, sorted by table.
std::vector<LocalRule> closure(const std::vector<LocalRule>& generators);

// phi1, ..., phi5 and the 24 pi rules.
std::vector<LocalRule> all_generators(bool include_phi1 = true);

struct Coordinates {
  int p = 0, q = 0, r = 0, s = 0;
  TypePerm pi{0, 1, 2, 3};
  int eps = 0;

  friend bool operator==(const Coordinates&, const Coordinates&) = default;
};

// phi2^p phi3^q phi4^r phi5^s phi_pi phi1^eps, applying phi1^eps first.
LocalRule rule_of_coordinates(const Coordinates& c);
// (a, e)(b, d) = (a + alpha_e(b), e + d) with alpha_1 swapping p<->q, r<->s
// and conjugating pi by (BC).
Coordinates multiply(const Coordinates& a, const Coordinates& b);
std::optional<Coordinates> coordinates_of(const LocalRule& r);
std::string describe(const LocalRule& r);

struct AutCheck {
  std::string check;
  bool pass = true;
  std::vector<std::string> witness;
};

struct AutReport {
  std::string subject;
  std::vector<AutCheck> checks;
  bool passed() const;
  std::string to_json(bool pretty = false) const;
};

// (a) well-defined on isomorphism types (every relabeling of a representative
// maps to the same type), (b) a bijection on every level, (c) preserves and
// reflects the order of the poset.
AutReport verify_automorphism(const LocalRule& r, const Poset& universe);
AutReport verify_automorphism(const LocalRule& r, int max_n);

// Involutions, commutations, pi multiplication, conjugation by phi1, the
// subgroup orders 768 / 384, and the semidirect multiplication law. Pointwise
// checks run over the catalog up to pointwise_n vertices.
AutReport verify_structure(int pointwise_n = 4);

}  // namespace dposet
