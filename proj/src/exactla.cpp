#include "birsym/exactla.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "elimination.hpp"

namespace birsym {

namespace {

int cmpabs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

using detail::Eliminator;
using detail::IntegerRing;
using detail::ModPRing;
using detail::UnimodularRing;

constexpr std::uint64_t kPrimeSeed = 0x5eed'b17a'7105ULL;

template <class Ring>
std::vector<typename Eliminator<Ring>::Row> integer_rows(const SparseIntMatrix& m) {
  std::vector<typename Eliminator<Ring>::Row> rows;
  rows.reserve(m.nrows());
  for (const auto& r : m.rows()) {
    typename Eliminator<Ring>::Row row;
    row.reserve(r.size());
    for (const auto& e : r) row.push_back({e.col, e.value});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Eliminator<ModPRing>::Row> modular_rows(const SparseIntMatrix& m, std::uint64_t p) {
  std::vector<Eliminator<ModPRing>::Row> rows;
  rows.reserve(m.nrows());
  for (const auto& r : m.rows()) {
    Eliminator<ModPRing>::Row row;
    row.reserve(r.size());
    for (const auto& e : r) {
      const std::uint64_t v = mpz_fdiv_ui(e.value.get_mpz_t(), p);
      if (v != 0) row.push_back({e.col, v});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Smith form of a small dense matrix without transforms: diagonalize by
// Euclidean row/column reduction, then normalize into a divisor chain.
std::vector<BigInt> dense_snf_divisors(std::vector<std::vector<BigInt>> a, std::size_t ncols) {
  const std::size_t m = a.size();
  const std::size_t k = ncols;
  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < std::min(m, k); ++t) {
    auto find_min = [&]() {
      std::size_t bi = m, bj = k;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < k; ++j) {
          if (sgn(a[i][j]) == 0) continue;
          if (bi == m || cmpabs(a[i][j], a[bi][bj]) < 0) {
            bi = i;
            bj = j;
          }
        }
      return std::pair{bi, bj};
    };
    auto [pi, pj] = find_min();
    if (pi == m) break;
    std::swap(a[t], a[pi]);
    for (auto& row : a) std::swap(row[t], row[pj]);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(a[i][t]) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < k; ++j)
          if (sgn(a[t][j]) != 0) a[i][j] -= q * a[t][j];
        if (sgn(a[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < k; ++j) {
        if (sgn(a[t][j]) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < m; ++i)
          if (sgn(a[i][t]) != 0) a[i][j] -= q * a[i][t];
        if (sgn(a[t][j]) != 0) clean = false;
      }
      if (clean) break;
      // Move the smallest remaining entry of row/column t onto the diagonal.
      std::size_t bi = t, bj = t;
      for (std::size_t i = t + 1; i < m; ++i)
        if (sgn(a[i][t]) != 0 && cmpabs(a[i][t], a[bi][bj]) < 0) {
          bi = i;
          bj = t;
        }
      for (std::size_t j = t + 1; j < k; ++j)
        if (sgn(a[t][j]) != 0 && cmpabs(a[t][j], a[bi][bj]) < 0) {
          bi = t;
          bj = j;
        }
      if (bi != t) std::swap(a[t], a[bi]);
      if (bj != t)
        for (auto& row : a) std::swap(row[t], row[bj]);
    }
    diag.push_back(abs(a[t][t]));
  }
  // diag(a, b) ~ diag(gcd, lcm) until the chain condition holds.
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      BigInt g = gcd(diag[i], diag[j]);
      BigInt l = lcm(diag[i], diag[j]);
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

}  // namespace

SparseIntMatrix::SparseIntMatrix(std::size_t nrows, std::size_t ncols)
    : ncols_(ncols), rows_(nrows) {}

SparseIntMatrix SparseIntMatrix::from_rows(
    std::size_t ncols,
    const std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>>& rows) {
  SparseIntMatrix m(0, ncols);
  m.rows_.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<std::pair<std::uint32_t, BigInt>> entries;
    entries.reserve(r.size());
    for (const auto& [c, v] : r) entries.emplace_back(c, BigInt(static_cast<long>(v)));
    m.append_row(std::move(entries));
  }
  return m;
}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& dense) {
  const std::size_t ncols = dense.empty() ? 0 : dense.front().size();
  SparseIntMatrix m(0, ncols);
  for (const auto& r : dense) {
    if (r.size() != ncols) throw std::invalid_argument("ragged dense matrix");
    std::vector<std::pair<std::uint32_t, BigInt>> entries;
    for (std::size_t c = 0; c < r.size(); ++c)
      if (r[c] != 0) entries.emplace_back(static_cast<std::uint32_t>(c), BigInt(static_cast<long>(r[c])));
    m.append_row(std::move(entries));
  }
  return m;
}

std::size_t SparseIntMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

void SparseIntMatrix::append_row(std::vector<std::pair<std::uint32_t, BigInt>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow row;
  row.reserve(entries.size());
  for (auto& [c, v] : entries) {
    if (c >= ncols_) throw std::out_of_range("column index " + std::to_string(c) + " out of range");
    if (!row.empty() && row.back().col == c) {
      row.back().value += v;
    } else {
      row.push_back({c, std::move(v)});
    }
  }
  std::erase_if(row, [](const SparseEntry& e) { return sgn(e.value) == 0; });
  rows_.push_back(std::move(row));
}

void SparseIntMatrix::append_row(SparseRow row) {
  std::vector<std::pair<std::uint32_t, BigInt>> entries;
  entries.reserve(row.size());
  for (auto& e : row) entries.emplace_back(e.col, std::move(e.value));
  append_row(std::move(entries));
}

BigInt SparseIntMatrix::at(std::size_t r, std::size_t c) const {
  const auto& row = rows_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const SparseEntry& e, std::size_t col) { return e.col < col; });
  if (it != row.end() && it->col == c) return it->value;
  return 0;
}

SparseIntMatrix SparseIntMatrix::transposed() const {
  std::vector<std::vector<std::pair<std::uint32_t, BigInt>>> cols(ncols_);
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& e : rows_[r]) cols[e.col].emplace_back(static_cast<std::uint32_t>(r), e.value);
  SparseIntMatrix t(0, rows_.size());
  for (auto& c : cols) t.append_row(std::move(c));
  return t;
}

SparseIntMatrix SparseIntMatrix::permuted(std::span<const std::size_t> row_perm,
                                          std::span<const std::size_t> col_perm) const {
  if (row_perm.size() != rows_.size() || col_perm.size() != ncols_)
    throw std::invalid_argument("permutation size mismatch");
  SparseIntMatrix p(0, ncols_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::vector<std::pair<std::uint32_t, BigInt>> entries;
    for (const auto& e : rows_.at(row_perm[i]))
      entries.emplace_back(static_cast<std::uint32_t>(col_perm[e.col]), e.value);
    p.append_row(std::move(entries));
  }
  return p;
}

std::vector<std::vector<BigInt>> SparseIntMatrix::to_dense() const {
  std::vector<std::vector<BigInt>> d(rows_.size(), std::vector<BigInt>(ncols_, BigInt(0)));
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& e : rows_[r]) d[r][e.col] = e.value;
  return d;
}

std::vector<BigInt> SnfResult::torsion() const {
  std::vector<BigInt> t;
  for (const auto& d : divisors)
    if (sgn(d) != 0 && d != 1) t.push_back(d);
  return t;
}

bool is_prime_u32(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 61ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 7ULL, 61ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(1ULL << 30, (1ULL << 31) - 1);
  for (;;) {
    const std::uint64_t c = dist(rng) | 1ULL;
    if (is_prime_u32(c)) return c;
  }
}

std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint64_t p) {
  if (p < 3 || p >= (1ULL << 32)) throw std::invalid_argument("modulus must be an odd prime below 2^32");
  Eliminator<ModPRing> e(ModPRing{p}, m.ncols(), modular_rows(m, p), false);
  return e.run();
}

std::size_t rank_exact(const SparseIntMatrix& m) {
  Eliminator<IntegerRing> e(IntegerRing{}, m.ncols(), integer_rows<IntegerRing>(m), false);
  return e.run();
}

std::size_t rank_over_q(const SparseIntMatrix& m, RankMethod method) {
  if (method == RankMethod::Exact) return rank_exact(m);
  std::mt19937_64 rng(kPrimeSeed);
  const std::uint64_t p1 = random_prime(rng);
  std::uint64_t p2 = random_prime(rng);
  while (p2 == p1) p2 = random_prime(rng);
  const std::size_t r1 = rank_mod_p(m, p1);
  const std::size_t r2 = rank_mod_p(m, p2);
  if (r1 == r2) return r1;
  return rank_exact(m);
}

SnfResult smith_normal_form(const SparseIntMatrix& m, const Limits& limits) {
  if (m.ncols() > limits.snf_max_cols || m.nrows() > limits.snf_max_rows) {
    throw BoundError("Smith form input " + std::to_string(m.nrows()) + "x" +
                     std::to_string(m.ncols()) + " exceeds the configured bound " +
                     std::to_string(limits.snf_max_rows) + "x" + std::to_string(limits.snf_max_cols));
  }
  Eliminator<UnimodularRing> e(UnimodularRing{}, m.ncols(), integer_rows<UnimodularRing>(m), false);
  const std::size_t units = e.run();
  const auto residual = e.residual();

  std::vector<std::uint32_t> cols;
  for (const auto& r : residual)
    for (const auto& x : r) cols.push_back(x.col);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  std::vector<std::vector<BigInt>> dense(residual.size(), std::vector<BigInt>(cols.size(), BigInt(0)));
  for (std::size_t i = 0; i < residual.size(); ++i)
    for (const auto& x : residual[i]) {
      const auto j = static_cast<std::size_t>(
          std::lower_bound(cols.begin(), cols.end(), x.col) - cols.begin());
      dense[i][j] = x.val;
    }

  SnfResult out;
  out.divisors.assign(units, BigInt(1));
  for (auto& d : dense_snf_divisors(std::move(dense), cols.size())) out.divisors.push_back(std::move(d));
  std::stable_partition(out.divisors.begin(), out.divisors.end(),
                        [](const BigInt& d) { return sgn(d) != 0; });
  out.rank = static_cast<std::size_t>(std::count_if(
      out.divisors.begin(), out.divisors.end(), [](const BigInt& d) { return sgn(d) != 0; }));
  out.divisors.resize(std::min(m.nrows(), m.ncols()), BigInt(0));
  return out;
}

bool row_span_membership(const SparseIntMatrix& m, std::span<const BigInt> v) {
  if (v.size() != m.ncols()) throw std::invalid_argument("vector length does not match column count");
  SparseIntMatrix augmented = m;
  std::vector<std::pair<std::uint32_t, BigInt>> row;
  for (std::size_t c = 0; c < v.size(); ++c)
    if (sgn(v[c]) != 0) row.emplace_back(static_cast<std::uint32_t>(c), v[c]);
  augmented.append_row(std::move(row));
  return rank_exact(m) == rank_exact(augmented);
}

RowSpan::RowSpan(const SparseIntMatrix& m) : ncols_(m.ncols()), pivot_slot_(m.ncols(), -1) {
  Eliminator<IntegerRing> e(IntegerRing{}, m.ncols(), integer_rows<IntegerRing>(m), true);
  e.run();
  for (const auto& [col, row] : e.pivots()) {
    SparseRow r;
    r.reserve(row.size());
    for (const auto& x : row) r.push_back({x.col, x.val});
    pivot_slot_[col] = static_cast<std::int64_t>(pivots_.size());
    pivots_.emplace_back(col, std::move(r));
  }
}

bool RowSpan::contains(SparseRow v) const {
  std::erase_if(v, [](const SparseEntry& e) { return sgn(e.value) == 0; });
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.col < b.col; });
  for (const auto& e : v)
    if (e.col >= ncols_) throw std::out_of_range("vector entry outside the column range");
  // Reduce against pivots in elimination order; a pivot row never touches
  // the pivot columns of rows recorded before it.
  for (const auto& [pc, prow] : pivots_) {
    if (v.empty()) return true;
    auto it = std::lower_bound(v.begin(), v.end(), pc,
                               [](const SparseEntry& e, std::uint32_t c) { return e.col < c; });
    if (it == v.end() || it->col != pc) continue;
    const BigInt& pv =
        std::lower_bound(prow.begin(), prow.end(), pc,
                         [](const SparseEntry& e, std::uint32_t c) { return e.col < c; })
            ->value;
    BigInt g = gcd(it->value, pv);
    BigInt alpha = pv / g, beta = it->value / g;
    SparseRow out;
    out.reserve(v.size() + prow.size());
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < prow.size()) {
      if (j == prow.size() || (i < v.size() && v[i].col < prow[j].col)) {
        out.push_back({v[i].col, alpha * v[i].value});
        ++i;
      } else if (i == v.size() || prow[j].col < v[i].col) {
        out.push_back({prow[j].col, -(beta * prow[j].value)});
        ++j;
      } else {
        BigInt x = alpha * v[i].value - beta * prow[j].value;
        if (sgn(x) != 0) out.push_back({v[i].col, std::move(x)});
        ++i;
        ++j;
      }
    }
    BigInt content = 0;
    for (const auto& e : out) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), e.value.get_mpz_t());
    if (content > 1)
      for (auto& e : out) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), content.get_mpz_t());
    v = std::move(out);
  }
  return v.empty();
}

bool RowSpan::contains(std::span<const std::pair<std::uint32_t, Rational>> v) const {
  BigInt denom = 1;
  for (const auto& [c, q] : v) denom = lcm(denom, BigInt(q.get_den()));
  SparseRow row;
  row.reserve(v.size());
  for (const auto& [c, q] : v) {
    BigInt x = q.get_num() * (denom / q.get_den());
    if (sgn(x) != 0) row.push_back({c, std::move(x)});
  }
  // Coalesce duplicate columns.
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.col < b.col; });
  SparseRow merged;
  for (auto& e : row) {
    if (!merged.empty() && merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      merged.push_back(std::move(e));
    }
  }
  return contains(std::move(merged));
}

std::vector<BigInt> SmithDecomposition::diagonal() const {
  std::vector<BigInt> d;
  for (std::size_t i = 0; i < D.size() && (D.empty() || i < D.front().size()); ++i) d.push_back(D[i][i]);
  return d;
}

SmithDecomposition smith_with_transforms(const std::vector<std::vector<BigInt>>& a) {
  const std::size_t m = a.size();
  const std::size_t k = m == 0 ? 0 : a.front().size();
  SmithDecomposition s;
  s.D = a;
  s.U.assign(m, std::vector<BigInt>(m, BigInt(0)));
  s.V.assign(k, std::vector<BigInt>(k, BigInt(0)));
  for (std::size_t i = 0; i < m; ++i) s.U[i][i] = 1;
  for (std::size_t j = 0; j < k; ++j) s.V[j][j] = 1;
  auto& D = s.D;
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(D[i], D[j]);
    std::swap(s.U[i], s.U[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& r : D) std::swap(r[i], r[j]);
    for (auto& r : s.V) std::swap(r[i], r[j]);
  };
  // row_i -= q * row_t
  auto row_op = [&](std::size_t i, std::size_t t, const BigInt& q) {
    for (std::size_t j = 0; j < k; ++j) D[i][j] -= q * D[t][j];
    for (std::size_t j = 0; j < m; ++j) s.U[i][j] -= q * s.U[t][j];
  };
  // col_j -= q * col_t
  auto col_op = [&](std::size_t j, std::size_t t, const BigInt& q) {
    for (std::size_t i = 0; i < m; ++i) D[i][j] -= q * D[i][t];
    for (std::size_t i = 0; i < k; ++i) s.V[i][j] -= q * s.V[i][t];
  };

  for (std::size_t t = 0; t < std::min(m, k); ++t) {
    for (;;) {
      std::size_t bi = m, bj = k;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < k; ++j)
          if (sgn(D[i][j]) != 0 && (bi == m || cmpabs(D[i][j], D[bi][bj]) < 0)) {
            bi = i;
            bj = j;
          }
      if (bi == m) break;
      if (bi != t) swap_rows(t, bi);
      if (bj != t) swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(D[i][t]) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), D[i][t].get_mpz_t(), D[t][t].get_mpz_t());
        row_op(i, t, q);
        if (sgn(D[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < k; ++j) {
        if (sgn(D[t][j]) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), D[t][j].get_mpz_t(), D[t][t].get_mpz_t());
        col_op(j, t, q);
        if (sgn(D[t][j]) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any entry not divisible by the pivot into row t.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < k; ++j)
          if (sgn(D[i][j]) != 0 && !mpz_divisible_p(D[i][j].get_mpz_t(), D[t][t].get_mpz_t())) {
            row_op(t, i, BigInt(-1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (sgn(D[t][t]) < 0) {
      for (std::size_t j = 0; j < k; ++j) D[t][j] = -D[t][j];
      for (std::size_t j = 0; j < m; ++j) s.U[t][j] = -s.U[t][j];
    }
  }
  return s;
}

}  // namespace birsym
