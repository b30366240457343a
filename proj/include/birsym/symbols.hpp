#pragma once

// Canonical generators of S_n(G), formal sums over them, and the
// determinant grading of rank-2 symbols on C_N x C_MN.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "birsym/abelian.hpp"
#include "birsym/config.hpp"

namespace birsym {

// Sorted tuple of character codes; the owning group is carried by context.
struct SymbolKey {
  std::vector<CharCode> entries;

  std::size_t size() const { return entries.size(); }
  CharCode operator[](std::size_t i) const { return entries[i]; }

  friend bool operator==(const SymbolKey&, const SymbolKey&) = default;
  friend auto operator<=>(const SymbolKey&, const SymbolKey&) = default;
};

struct SymbolKeyHash {
  std::size_t operator()(const SymbolKey& k) const noexcept;
};

// Sorts raw. Throws std::invalid_argument when raw does not span the dual.
SymbolKey canonicalize(const GroupDescriptor& group, std::vector<CharCode> raw);
// Sorting only; for tuples already known to span.
SymbolKey canonical_unchecked(std::vector<CharCode> raw);

// All canonical keys in sorted order. Throws BoundError when |G|^n exceeds
// limits.max_enumeration.
std::vector<SymbolKey> enumerate_generators(const GroupDescriptor& group, int n,
                                            const Limits& limits = {});

class FormalSum {
 public:
  using Terms = std::map<SymbolKey, mpq_class>;

  FormalSum() = default;
  static FormalSum basis(SymbolKey key, const mpq_class& coeff = 1);

  void add(const SymbolKey& key, const mpq_class& coeff);
  void add(const FormalSum& other, const mpq_class& scale = 1);

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  mpq_class coefficient(const SymbolKey& key) const;

  FormalSum operator+(const FormalSum& o) const;
  FormalSum operator-(const FormalSum& o) const;
  FormalSum scaled(const mpq_class& s) const;

  friend bool operator==(const FormalSum&, const FormalSum&) = default;

 private:
  Terms terms_;
};

// |det| of a rank-2 symbol on C_N x C_MN, as the unit class min(k, N-k).
struct DetClass {
  std::int64_t k = 1;
  std::int64_t modulus = 1;
  friend bool operator==(const DetClass&, const DetClass&) = default;
};

// Level (N, M) of a group with factors [N, M*N], N >= 2. Throws
// std::invalid_argument otherwise.
std::pair<std::int64_t, std::int64_t> bicyclic_level(const GroupDescriptor& group);

DetClass det_class(const GroupDescriptor& group, const SymbolKey& key);
// Unit classes 1 <= k <= N/2 with gcd(k, N) = 1, ascending.
std::vector<DetClass> det_classes(const GroupDescriptor& group);
std::vector<SymbolKey> enumerate_det_class(const GroupDescriptor& group, DetClass k,
                                           const Limits& limits = {});

}  // namespace birsym
