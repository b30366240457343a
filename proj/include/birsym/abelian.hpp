#pragma once

// Finite abelian groups as products of cyclic factors, their characters
// (identified with residue tuples through the standard rational pairing),
// cyclic subgroups and quotients.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "birsym/config.hpp"

namespace birsym {

using Residues = std::vector<std::int64_t>;
// Mixed-radix index of a residue tuple, first factor most significant, so
// numeric order is lexicographic order on residues.
using CharCode = std::uint32_t;

// Immutable handle; copies share the same descriptor data.
class GroupDescriptor {
 public:
  GroupDescriptor();  // the trivial group, factors [1]

  const std::vector<std::int64_t>& factors() const;
  const std::vector<std::int64_t>& invariant_factors() const;  // nonunit, d_1 | d_2 | ...
  std::int64_t order() const;
  int rank() const;  // number of invariant factors > 1
  std::size_t arity() const { return factors().size(); }
  std::string literal() const;  // "3x9"

  CharCode encode(std::span<const std::int64_t> residues) const;  // reduces first
  Residues decode(CharCode c) const;
  std::int64_t residue(CharCode c, std::size_t i) const;

  CharCode add(CharCode a, CharCode b) const;
  CharCode sub(CharCode a, CharCode b) const;
  CharCode neg(CharCode a) const;
  CharCode scale(CharCode a, std::int64_t k) const;
  std::int64_t element_order(CharCode a) const;

  // True iff the elements generate the whole group. Decided on the Frattini
  // quotient: for every prime p | |G|, the images in G/pG must span an
  // F_p-space of dimension #{i : p | factors[i]}.
  bool generates(std::span<const CharCode> elems) const;

  const std::vector<std::int64_t>& primes() const;

  friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b);

 private:
  friend GroupDescriptor make_group(const std::vector<std::int64_t>& orders, const Limits& limits);
  struct Data;
  explicit GroupDescriptor(std::shared_ptr<const Data> d);
  std::shared_ptr<const Data> d_;
};

GroupDescriptor make_group(const std::vector<std::int64_t>& orders, const Limits& limits = {});
// Parses the "n1xn2x..." literal.
GroupDescriptor parse_group(std::string_view literal, const Limits& limits = {});

class Character {
 public:
  Character(GroupDescriptor group, std::span<const std::int64_t> residues);
  Character(GroupDescriptor group, CharCode code);

  const GroupDescriptor& group() const { return group_; }
  CharCode code() const { return code_; }
  Residues residues() const { return group_.decode(code_); }

  Character operator+(const Character& o) const;
  Character operator-(const Character& o) const;
  Character operator-() const;
  Character scaled(std::int64_t k) const;

  friend bool operator==(const Character& a, const Character& b);
  friend std::strong_ordering operator<=>(const Character& a, const Character& b);

 private:
  GroupDescriptor group_;
  CharCode code_;
};

// Sum_i b_i g_i / factors[i] mod 1, as a rational in [0, 1).
mpq_class pairing(const Character& b, std::span<const std::int64_t> g);
mpq_class pairing(const GroupDescriptor& group, CharCode b, CharCode g);

// Subgroup generated by the characters equals the full dual, decided by the
// Smith form of [char rows; diag(factors)].
bool spans_dual(std::span<const Character> chars, const GroupDescriptor& group);

struct SubgroupHandle {
  CharCode generator = 0;  // least code among generators of the subgroup
  std::int64_t order = 1;
  GroupDescriptor ambient;

  std::vector<CharCode> elements() const;
  friend bool operator==(const SubgroupHandle& a, const SubgroupHandle& b) {
    return a.ambient == b.ambient && a.generator == b.generator && a.order == b.order;
  }
};

// One handle per distinct proper cyclic subgroup (trivial one included),
// ordered by (order, generator).
std::vector<SubgroupHandle> proper_cyclic_subgroups(const GroupDescriptor& group);

// Data for 0 -> G' -> G -> G'' -> 0 with G' cyclic, and the dual sequence
// 0 -> A'' -> A -> A' -> 0.
class QuotientData {
 public:
  const GroupDescriptor& quotient() const { return quotient_; }
  const GroupDescriptor& ambient() const { return ambient_; }
  const SubgroupHandle& sub() const { return sub_; }

  CharCode project(CharCode element) const;
  // Quotient character -> annihilator character of G.
  CharCode dual_embed(CharCode quotient_char) const { return embed_.at(quotient_char); }
  // Inverse of dual_embed on the annihilator; -1 outside it.
  std::int64_t dual_unembed(CharCode ambient_char) const { return unembed_.at(ambient_char); }
  bool in_annihilator(CharCode ambient_char) const { return unembed_.at(ambient_char) >= 0; }
  // Restriction A -> A' = Z/d through the generator of G'.
  std::int64_t dual_restrict(CharCode ambient_char) const { return restrict_.at(ambient_char); }
  const std::vector<CharCode>& annihilator() const { return annihilator_; }

 private:
  friend QuotientData quotient_data(const GroupDescriptor& group, const SubgroupHandle& sub);
  GroupDescriptor ambient_;
  GroupDescriptor quotient_;
  SubgroupHandle sub_;
  std::vector<std::vector<std::int64_t>> project_matrix_;  // column transform V
  std::vector<std::size_t> kept_;                         // columns of D with nonunit entries
  std::vector<CharCode> embed_;
  std::vector<std::int64_t> unembed_;
  std::vector<CharCode> annihilator_;
  std::vector<std::int64_t> restrict_;
};

QuotientData quotient_data(const GroupDescriptor& group, const SubgroupHandle& sub);

std::int64_t euler_phi(std::int64_t n);
std::vector<std::int64_t> prime_divisors(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);

}  // namespace birsym
