#include <doctest.h>

#include <numeric>
#include <random>

#include "birsym/exactla.hpp"
#include "oracles.hpp"

using namespace birsym;

namespace {

SparseIntMatrix to_sparse(const oracle::DenseZ& d, std::size_t cols) {
  SparseIntMatrix m(0, cols);
  for (const auto& r : d) {
    std::vector<std::pair<std::uint32_t, BigInt>> row;
    for (std::size_t c = 0; c < r.size(); ++c) row.emplace_back(static_cast<std::uint32_t>(c), r[c]);
    m.append_row(std::move(row));
  }
  return m;
}

// Rank-deficient integer matrices: products of a random r x k and k x c.
oracle::DenseZ low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t k) {
  const auto a = oracle::random_matrix(rng, rows, k, 60, 3);
  const auto b = oracle::random_matrix(rng, k, cols, 60, 3);
  oracle::DenseZ m(rows, std::vector<mpz_class>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t j = 0; j < cols; ++j) m[i][j] += a[i][t] * b[t][j];
  return m;
}

}  // namespace

TEST_SUITE("exactla") {
  TEST_CASE("frac is canonical") {
    const auto q = frac(6, -4);
    CHECK(q.get_num() == -3);
    CHECK(q.get_den() == 2);
    CHECK(frac(0, 6) + frac(1, 3) == frac(1, 3));
  }

  TEST_CASE("sparse rows are merged and zero-free") {
    auto m = SparseIntMatrix::from_rows(4, {{{2, 3}, {0, 1}, {2, -3}, {1, 5}}});
    REQUIRE(m.nrows() == 1);
    CHECK(m.row(0).size() == 2);
    CHECK(m.at(0, 0) == 1);
    CHECK(m.at(0, 1) == 5);
    CHECK(m.at(0, 2) == 0);
  }

  TEST_CASE("rank over Q: exact and modular paths agree with a dense oracle") {
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t rows = 1 + rng() % 14, cols = 1 + rng() % 14;
      const auto dense = trial % 2 ? oracle::random_matrix(rng, rows, cols, 35, 4)
                                   : low_rank(rng, rows, cols, 1 + rng() % 4);
      const auto m = to_sparse(dense, cols);
      const auto expected = oracle::rank_q(oracle::to_q(dense));
      CHECK(rank_exact(m) == expected);
      CHECK(rank_over_q(m, RankMethod::Modular) == expected);
      CHECK(rank_over_q(m) == expected);
    }
  }

  TEST_CASE("rank is invariant under permutation and transposition") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t rows = 2 + rng() % 10, cols = 2 + rng() % 10;
      const auto m = to_sparse(low_rank(rng, rows, cols, 1 + rng() % 3), cols);
      std::vector<std::size_t> rp(rows), cp(cols);
      std::iota(rp.begin(), rp.end(), 0);
      std::iota(cp.begin(), cp.end(), 0);
      std::shuffle(rp.begin(), rp.end(), rng);
      std::shuffle(cp.begin(), cp.end(), rng);
      const auto r = rank_over_q(m);
      CHECK(rank_over_q(m.permuted(rp, cp)) == r);
      CHECK(rank_over_q(m.transposed()) == r);
    }
  }

  TEST_CASE("rank mod p never exceeds rank over Q") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
      const auto d = oracle::random_matrix(rng, 8, 8, 50, 6);
      const auto m = to_sparse(d, 8);
      for (std::uint64_t p : {3u, 5u, 7u}) CHECK(rank_mod_p(m, p) <= rank_over_q(m));
    }
    // 3 x I has rank 0 mod 3.
    CHECK(rank_mod_p(SparseIntMatrix::from_dense({{3, 0}, {0, 3}}), 3) == 0);
    CHECK_THROWS(rank_mod_p(SparseIntMatrix(1, 1), 2));
  }

  TEST_CASE("Smith normal form agrees with a dense oracle") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9;
      const auto dense = trial % 3 ? oracle::random_matrix(rng, rows, cols, 45, 6)
                                   : low_rank(rng, rows, cols, 1 + rng() % 3);
      const auto snf = smith_normal_form(to_sparse(dense, cols));
      const auto expect = oracle::snf_divisors(dense);
      CHECK(snf.rank == expect.size());
      CHECK(snf.rank == oracle::rank_q(oracle::to_q(dense)));
      std::vector<std::int64_t> t;
      for (const auto& d : snf.torsion()) t.push_back(d.get_si());
      CHECK(t == oracle::torsion_of(dense));
      for (std::size_t i = 1; i < snf.rank; ++i) CHECK(snf.divisors[i] % snf.divisors[i - 1] == 0);
    }
  }

  TEST_CASE("Smith normal form of known presentations") {
    const auto snf = smith_normal_form(SparseIntMatrix::from_dense({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
    REQUIRE(snf.rank == 3);
    CHECK(snf.divisors[0] == 2);
    CHECK(snf.divisors[1] == 6);
    CHECK(snf.divisors[2] == 12);
  }

  TEST_CASE("SNF refuses matrices beyond the bound") {
    Limits lim;
    lim.snf_max_cols = 3;
    CHECK_THROWS_AS(smith_normal_form(SparseIntMatrix(2, 4), lim), BoundError);
  }

  TEST_CASE("row span membership") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t cols = 6;
      const auto dense = low_rank(rng, 5, cols, 2);
      const auto m = to_sparse(dense, cols);
      const RowSpan span(m);
      CHECK(span.rank() == rank_over_q(m));
      // Combinations of rows are members.
      std::vector<BigInt> v(cols, 0);
      for (const auto& r : dense) {
        const long k = static_cast<long>(rng() % 5) - 2;
        for (std::size_t c = 0; c < cols; ++c) v[c] += k * r[c];
      }
      CHECK(row_span_membership(m, v));
      SparseRow sv;
      for (std::size_t c = 0; c < cols; ++c)
        if (v[c] != 0) sv.push_back({static_cast<std::uint32_t>(c), v[c]});
      CHECK(span.contains(sv));
      // Membership of a random vector matches the rank oracle.
      auto w = oracle::random_matrix(rng, 1, cols, 70, 3);
      auto stacked = dense;
      stacked.push_back(w[0]);
      const bool expect = oracle::rank_q(oracle::to_q(stacked)) == oracle::rank_q(oracle::to_q(dense));
      CHECK(row_span_membership(m, w[0]) == expect);
      std::vector<std::pair<std::uint32_t, Rational>> qw;
      for (std::size_t c = 0; c < cols; ++c)
        if (w[0][c] != 0) qw.emplace_back(static_cast<std::uint32_t>(c), frac(w[0][c], 3));
      CHECK(span.contains(qw) == expect);
    }
  }

  TEST_CASE("smith_with_transforms: U A V = D") {
    const std::vector<std::vector<BigInt>> a = {{4, 0}, {0, 6}};
    const auto s = smith_with_transforms(a);
    const auto diag = s.diagonal();
    REQUIRE(diag.size() == 2);
    CHECK(diag[0] == 2);
    CHECK(diag[1] == 12);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        BigInt x = 0;
        for (std::size_t k = 0; k < 2; ++k)
          for (std::size_t l = 0; l < 2; ++l) x += s.U[i][k] * a[k][l] * s.V[l][j];
        CHECK(x == s.D[i][j]);
      }
  }

  TEST_CASE("primes for the modular path") {
    CHECK(is_prime_u32(2147483647));
    CHECK_FALSE(is_prime_u32(2147483649ull));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 5; ++i) {
      const auto p = random_prime(rng);
      CHECK(p >= (1ull << 30));
      CHECK(p < (1ull << 31));
      CHECK(is_prime_u32(p));
    }
  }
}
