#pragma once

// Exact integer linear algebra over sparse matrices: rank over Q (exact
// fraction-free path and a two-prime modular fast path), Smith normal form,
// and row-span membership.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "birsym/config.hpp"

namespace birsym {

using BigInt = mpz_class;
using Rational = mpq_class;

// num/den in canonical form; GMP rational arithmetic requires it.
inline Rational frac(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

struct SparseEntry {
  std::uint32_t col;
  BigInt value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

using SparseRow = std::vector<SparseEntry>;

// Row-major sparse matrix with arbitrary-precision entries. Rows are kept
// sorted by column with no stored zeros.
class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t nrows, std::size_t ncols);

  // Small-coefficient builder; duplicate columns are summed.
  static SparseIntMatrix from_rows(
      std::size_t ncols,
      const std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>>& rows);
  static SparseIntMatrix from_dense(const std::vector<std::vector<std::int64_t>>& dense);

  std::size_t nrows() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }
  std::size_t nnz() const;

  // Appends a row; entries are sorted, merged and zero-filtered.
  void append_row(std::vector<std::pair<std::uint32_t, BigInt>> entries);
  void append_row(SparseRow row);

  const SparseRow& row(std::size_t i) const { return rows_.at(i); }
  const std::vector<SparseRow>& rows() const { return rows_; }
  BigInt at(std::size_t r, std::size_t c) const;

  SparseIntMatrix transposed() const;
  // Row i of the result is row row_perm[i]; column j moves to col_perm[j].
  SparseIntMatrix permuted(std::span<const std::size_t> row_perm,
                           std::span<const std::size_t> col_perm) const;
  std::vector<std::vector<BigInt>> to_dense() const;

 private:
  std::size_t ncols_ = 0;
  std::vector<SparseRow> rows_;
};

struct SnfResult {
  std::vector<BigInt> divisors;  // d_1 | d_2 | ..., length min(nrows, ncols)
  std::size_t rank = 0;

  // Nonunit nonzero divisors: the cokernel torsion.
  std::vector<BigInt> torsion() const;
};

enum class RankMethod { Auto, Exact, Modular };

// Exact rank over Q. Auto runs the modular path with two distinct random
// primes above 2^30 and accepts when they agree; otherwise it falls back to
// fraction-free elimination over Z.
std::size_t rank_over_q(const SparseIntMatrix& m, RankMethod method = RankMethod::Auto);
std::size_t rank_exact(const SparseIntMatrix& m);
std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint64_t p);

SnfResult smith_normal_form(const SparseIntMatrix& m, const Limits& limits = {});

// True iff v lies in the rational row span of m, decided as
// rank(m) == rank(m with v appended).
bool row_span_membership(const SparseIntMatrix& m, std::span<const BigInt> v);

// Echelon basis of a rational row space for repeated membership queries.
class RowSpan {
 public:
  RowSpan() = default;
  explicit RowSpan(const SparseIntMatrix& m);

  std::size_t rank() const { return pivots_.size(); }
  std::size_t ncols() const { return ncols_; }

  bool contains(SparseRow v) const;
  bool contains(std::span<const std::pair<std::uint32_t, Rational>> v) const;

 private:
  std::size_t ncols_ = 0;
  // Pivot rows in elimination order; each has zeros at all earlier pivot
  // columns.
  std::vector<std::pair<std::uint32_t, SparseRow>> pivots_;
  std::vector<std::int64_t> pivot_slot_;  // column -> index into pivots_, or -1
};

// Dense Smith decomposition U*A*V = D with unimodular U, V. Used for the
// small presentation matrices of finite abelian groups.
struct SmithDecomposition {
  std::vector<std::vector<BigInt>> U, D, V;
  std::vector<BigInt> diagonal() const;
};

SmithDecomposition smith_with_transforms(const std::vector<std::vector<BigInt>>& a);

// Deterministic 32-bit primality (Miller-Rabin, bases 2, 7, 61).
bool is_prime_u32(std::uint64_t n);
// Uniform random prime in [2^30, 2^31).
std::uint64_t random_prime(std::mt19937_64& rng);

}  // namespace birsym
