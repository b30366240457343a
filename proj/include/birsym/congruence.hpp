#pragma once

// Gamma(N, MN) = { a = 1, b = 0 mod N; c = 0, d = 1 mod MN } inside SL2(Z):
// cosets as residue quadruples, lifting, cusps, Manin symbol spaces, and the
// closed-form dimension and torsion formulas for M_2^-.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "birsym/abelian.hpp"
#include "birsym/exactla.hpp"
#include "birsym/quotients.hpp"
#include "birsym/structmaps.hpp"

namespace birsym {

struct IntMatrix2 {
  BigInt a = 1, b = 0, c = 0, d = 1;

  BigInt det() const { return a * d - b * c; }
  IntMatrix2 operator*(const IntMatrix2& o) const;
  friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
};

// (a, b) mod N and (c, d) mod MN; the level is carried by context.
struct CosetSymbol {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  friend bool operator==(const CosetSymbol&, const CosetSymbol&) = default;
  friend auto operator<=>(const CosetSymbol&, const CosetSymbol&) = default;
};

struct Level {
  std::int64_t N = 2;
  std::int64_t M = 1;
  std::int64_t L() const { return N * M; }
};

Level make_level(std::int64_t N, std::int64_t M);  // N >= 2, M >= 1

// Membership by the defining congruences. Throws std::logic_error if the
// second description (a = 1 mod MN) fails for a member.
bool gamma_member(const IntMatrix2& m, const Level& level);
CosetSymbol coset_of(const IntMatrix2& m, const Level& level);
// det = 1 mod N and the columns (a, c), (b, d) span C_N x C_MN.
bool is_coset_symbol(const CosetSymbol& s, const Level& level);
// An SL2(Z) matrix with coset_of(result) = s.
IntMatrix2 lift_coset(const CosetSymbol& s, const Level& level);
// Sorted lexicographically on (a, b, c, d).
std::vector<CosetSymbol> enumerate_cosets(const Level& level, const Limits& limits = {});
// M^2 N^3 prod_{p | MN} (1 - p^-2).
std::int64_t coset_index_formula(const Level& level);

struct ManinSystem {
  Level level;
  bool with_O = false;
  std::vector<CosetSymbol> basis;
  SparseIntMatrix rel;
  bool relation3_vacuous = false;

  std::int64_t column(const CosetSymbol& s) const;

 private:
  friend ManinSystem build_manin(const Level& level, bool with_O, const Limits& limits);
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

// Rows (R1), (R2), and (O) when with_O.
ManinSystem build_manin(const Level& level, bool with_O, const Limits& limits = {});

struct ManinSpace {
  ManinSystem system;
  DimensionReport report;
};

ManinSpace manin_space(const Level& level, bool with_O, const DimensionOptions& options = {});

// Orbits of T = (1,1;0,1) and -I acting on the right of the cosets. Throws
// for MN <= 2.
std::int64_t cusp_count(const Level& level, const Limits& limits = {});
// MN^2/2 prod_{p | MN} (1 - p^-2). Throws for MN <= 2.
mpq_class cusp_count_formula(const Level& level);
// 1 + MN^2 (MN - 6)/24 prod_{p | MN} (1 - p^-2). Throws for N < 3.
mpq_class genus_formula(const Level& level);
// 1 + mu/12 - cusps/2 with mu the index in PSL2(Z) and cusps the orbit
// count; Gamma(N, MN) has no elliptic points for N >= 2.
std::int64_t genus_riemann_hurwitz(const Level& level, const Limits& limits = {});
// 2 phi(M) + phi(2M), M > 2.
std::int64_t eps_fixed_formula(std::int64_t M);
// Cusp classes of Gamma(2, 2M) by (a', c') = +-(a + 2jc, c) mod 2M, counting
// those fixed by (a, c) -> (-a, c). M > 2.
std::int64_t eps_fixed_enumerated(std::int64_t M);
// Number of cusp classes under the same criterion.
std::int64_t cusp_classes_enumerated(std::int64_t M);

struct LevelInvariants {
  Level level;
  std::int64_t index = 0;
  std::int64_t cusps = 0;
  std::optional<std::int64_t> genus;
  std::optional<std::int64_t> fixed_cusps;

  nlohmann::json to_json() const;
};

LevelInvariants level_invariants(const Level& level, const Limits& limits = {});

// Dimension and torsion of M_2^-(G) by the closed formulas, dispatched on
// the invariant factors of G.
DimensionReport closed_form(const GroupDescriptor& group);

// dim M_2 - dim M_2^- for cyclic N > 5 or C_p x C_p with p an odd prime.
// Throws std::invalid_argument otherwise.
mpq_class difference_formula(const GroupDescriptor& group);
// (dim M_2, dim M_2^-) of C_p x C_p, p an odd prime.
std::pair<std::int64_t, std::int64_t> pxp_dimensions(std::int64_t p);

// Symbol maps between M^-_{2,1}(C_N x C_MN) and Manin symbols.
CosetSymbol symbol_to_coset(const GroupDescriptor& group, const SymbolKey& key);
SymbolKey coset_to_symbol(const GroupDescriptor& group, const CosetSymbol& s);

// Bijection of generators, relations mapped into the other side's span in
// both directions, equal dimension and torsion.
std::vector<CheckResult> iso_check(const Level& level, const Limits& limits = {});

// Per-level checks: coset count, lift round trip, cusp formula, dimension
// formula, torsion, relation (3).
std::vector<CheckResult> verify_level(const Level& level, const Limits& limits = {});

std::string level_name(const Level& level);

}  // namespace birsym
