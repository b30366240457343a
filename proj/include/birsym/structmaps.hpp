#pragma once

// Multiplication and co-multiplication along 0 -> G' -> G -> G'' -> 0 with
// G' cyclic, the maps nu and psi on the kernel of M_n -> M_n^-, and the
// checks that tie them together.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "birsym/abelian.hpp"
#include "birsym/quotients.hpp"
#include "birsym/symbols.hpp"

namespace birsym {

// Left keys live over G' = Z/d (group make_group({d})), right keys over G''.
class TensorSum {
 public:
  using Index = std::pair<SymbolKey, SymbolKey>;
  using Terms = std::map<Index, mpq_class>;

  void add(const SymbolKey& left, const SymbolKey& right, const mpq_class& coeff);
  void add(const TensorSum& other, const mpq_class& scale = 1);

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  TensorSum scaled(const mpq_class& s) const;
  TensorSum operator-(const TensorSum& o) const;

  friend bool operator==(const TensorSum&, const TensorSum&) = default;

 private:
  Terms terms_;
};

// Data for one proper cyclic subgroup: the sequence itself and the cyclic
// group Z/d that carries left keys.
struct Extension {
  QuotientData data;
  GroupDescriptor left;  // Z/d

  std::int64_t d() const { return data.sub().order; }
  const GroupDescriptor& ambient() const { return data.ambient(); }
  const GroupDescriptor& right() const { return data.quotient(); }
};

Extension make_extension(const GroupDescriptor& group, const SubgroupHandle& sub);

// Sum over all lifts of the left entries, right entries embedded.
FormalSum multiply(const Extension& ext, const SymbolKey& left, const SymbolKey& right);
FormalSum multiply(const Extension& ext, const FormalSum& left, const FormalSum& right);

// Sum over partitions I' | I'' with |I'| = n_left, entries of I'' in the
// annihilator and spanning it.
TensorSum comultiply(const Extension& ext, const SymbolKey& key, int n_left);
TensorSum comultiply(const Extension& ext, const FormalSum& x, int n_left);

// Left keys reduced to min(a, -a) (relation (P)).
TensorSum nu_component(const Extension& ext, const FormalSum& x);

struct NuComponent {
  SubgroupHandle sub;
  TensorSum value;
};
// One entry per proper cyclic subgroup, in proper_cyclic_subgroups order.
std::vector<NuComponent> nu(const GroupDescriptor& group, const FormalSum& x);

// 1/2 (<a', b> + <-a', b>) with a' the least code restricting to a.
FormalSum psi(const Extension& ext, std::int64_t a, const SymbolKey& right);
FormalSum psi(const Extension& ext, const TensorSum& omega);
// Lift of a in Z/d: the least character of G restricting to it.
CharCode least_lift(const Extension& ext, std::int64_t a);

// Sum over e1, e2 = +-1 of <e1 b1, e2 b2, b3, ...>.
FormalSum delta_sum(const GroupDescriptor& group, const SymbolKey& key);

struct CheckResult {
  std::string check;
  std::string group;
  int n = 0;
  bool pass = false;
  nlohmann::json lhs{};
  nlohmann::json rhs{};
  std::optional<std::string> counterexample{};

  nlohmann::json to_json() const;
};

// Zero test in (V'/R') (x) (V''/R'') over Q, through the Kronecker relation
// span R' (x) V'' + V' (x) R''.
class TensorQuotient {
 public:
  TensorQuotient(RelationSystem left, RelationSystem right);
  bool is_zero(const TensorSum& t) const;

 private:
  RelationSystem left_;
  RelationSystem right_;
  RowSpan span_;
};

// The three checks: dimension count, nu(2 psi(w)) = 2w, psi(nu(g)) = g.
std::vector<CheckResult> verify_kernel_iso(const GroupDescriptor& group, int n, const Limits& limits = {});

// delta_sum(key) in the plain relation span for every key.
CheckResult verify_delta(const GroupDescriptor& group, int n, const Limits& limits = {});

// Images of defining relations under Delta and nabla lie in the target
// relation spans, for every proper cyclic G' and 1 <= n' < n.
std::vector<CheckResult> verify_comult(const GroupDescriptor& group, int n, const Limits& limits = {});

std::string describe(const GroupDescriptor& group, const SymbolKey& key);
std::string describe(const GroupDescriptor& group, const FormalSum& x);

}  // namespace birsym
