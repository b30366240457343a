#pragma once

// Relation systems presenting M_n(G), M_n^-(G) and M_1^+(G), and the
// dimension/torsion reports computed from them.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "birsym/abelian.hpp"
#include "birsym/exactla.hpp"
#include "birsym/symbols.hpp"

namespace birsym {

// Plain: (O), (M). Minus: (O), (M), (A). Plus: n = 1 with (P).
enum class Variant { Plain, Minus, Plus };
enum class Method { Brute, Formula };

std::string_view to_string(Variant v);
std::string_view to_string(Method m);
Variant parse_variant(std::string_view s);  // "plain" | "minus" | "plus"

struct RelationSystem {
  GroupDescriptor group;
  int n = 0;
  Variant variant = Variant::Plain;
  std::vector<SymbolKey> basis;  // columns
  std::unordered_map<SymbolKey, std::uint32_t, SymbolKeyHash> index;
  SparseIntMatrix rel;  // one row per relation

  // Column of key, or -1.
  std::int64_t column(const SymbolKey& key) const;
  // Coordinates of x; throws std::out_of_range for keys outside the basis.
  std::vector<std::pair<std::uint32_t, Rational>> coordinates(const FormalSum& x) const;
  FormalSum row_sum(std::size_t r) const;
};

RelationSystem build_relations(const GroupDescriptor& group, int n, Variant variant,
                               const Limits& limits = {});
// Same templates over a subset of keys. The subset must be closed under
// every relation template (e.g. one determinant class); a relation leaving
// it throws std::logic_error.
RelationSystem build_relations_on(const GroupDescriptor& group, int n, Variant variant,
                                  std::vector<SymbolKey> basis);

struct DimensionReport {
  std::string group;
  int n = 0;
  Variant variant = Variant::Plain;
  Method method = Method::Brute;
  std::int64_t dim = 0;
  std::vector<std::int64_t> torsion;  // elementary divisors > 1
  bool torsion_computed = false;
  std::int64_t generators = 0;
  double ms = 0;

  nlohmann::json to_json() const;
  static DimensionReport from_json(const nlohmann::json& j);
};

struct DimensionOptions {
  bool torsion = false;
  // For n = 2 on C_N x C_MN with N >= 3, compute the class-1 block and scale
  // by phi(N)/2.
  bool grading = false;
  RankMethod rank_method = RankMethod::Auto;
  Limits limits{};
};

DimensionReport dimension(const GroupDescriptor& group, int n, Variant variant,
                          const DimensionOptions& options = {});
DimensionReport dimension_of(const RelationSystem& system, const DimensionOptions& options = {});

// gamma(a, b) = <a, b_2, ...> + <-a, b_2, ...> for every key and position.
std::vector<FormalSum> kernel_generators(const GroupDescriptor& group, int n,
                                         const Limits& limits = {});
// dim M_n(G)_Q - dim M_n^-(G)_Q.
std::int64_t kernel_dimension(const GroupDescriptor& group, int n, const DimensionOptions& options = {});
// Rank of the kernel generators modulo the plain relation span.
std::int64_t kernel_span_dimension(const GroupDescriptor& group, int n, const Limits& limits = {});

}  // namespace birsym
