#pragma once

// Sparse Gaussian elimination with Markowitz-style pivot selection, generic
// over the arithmetic: Z/p, fraction-free Z, or unimodular Z (unit pivots
// only, for Smith form preprocessing).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <type_traits>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace birsym::detail {

struct ModPRing {
  using Value = std::uint64_t;
  using PivotInfo = std::uint64_t;  // inverse of the pivot
  static constexpr bool kDenseFallback = true;
  static constexpr bool kNormalize = false;

  std::uint64_t p;

  bool is_zero(Value v) const { return v == 0; }
  bool allow_pivot(Value v) const { return v != 0; }
  int quality(Value) const { return 0; }

  Value pow(Value a, std::uint64_t e) const {
    Value r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  }
  PivotInfo pivot_info(Value pc) const { return pow(pc, p - 2); }

  // target <- alpha*target - beta*pivot
  std::pair<Value, Value> coefficients(Value tc, PivotInfo inv) const {
    return {1, tc * inv % p};
  }
  Value scale(const Value&, Value t) const { return t; }
  Value neg_scale(const Value& beta, Value q) const { return (p - beta * q % p) % p; }
  Value mul_sub(const Value&, Value t, const Value& beta, Value q) const {
    return (t + p - beta * q % p) % p;
  }
};

struct IntegerRing {
  using Value = mpz_class;
  using PivotInfo = mpz_class;
  static constexpr bool kDenseFallback = true;
  static constexpr bool kNormalize = true;

  bool is_zero(const Value& v) const { return sgn(v) == 0; }
  bool allow_pivot(const Value& v) const { return sgn(v) != 0; }
  int quality(const Value& v) const {
    const auto bits = mpz_sizeinbase(v.get_mpz_t(), 2);
    return mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0 ? 0 : static_cast<int>(bits) + 1;
  }
  PivotInfo pivot_info(const Value& pc) const { return pc; }

  std::pair<Value, Value> coefficients(const Value& tc, const PivotInfo& pc) const {
    mpz_class g = gcd(tc, pc);
    return {mpz_class(pc / g), mpz_class(tc / g)};
  }
  Value scale(const Value& alpha, const Value& t) const { return alpha * t; }
  Value neg_scale(const Value& beta, const Value& q) const { return -(beta * q); }
  Value mul_sub(const Value& alpha, const Value& t, const Value& beta, const Value& q) const {
    return alpha * t - beta * q;
  }
};

// Only +-1 pivots; every operation is a unimodular row operation, so the
// cokernel of the remaining rows equals that of the input modulo the
// eliminated (unit) columns.
struct UnimodularRing {
  using Value = mpz_class;
  using PivotInfo = mpz_class;
  static constexpr bool kDenseFallback = false;
  static constexpr bool kNormalize = false;

  bool is_zero(const Value& v) const { return sgn(v) == 0; }
  bool allow_pivot(const Value& v) const { return mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0; }
  int quality(const Value&) const { return 0; }
  PivotInfo pivot_info(const Value& pc) const { return pc; }

  std::pair<Value, Value> coefficients(const Value& tc, const PivotInfo& pc) const {
    return {mpz_class(1), mpz_class(tc * pc)};
  }
  Value scale(const Value&, const Value& t) const { return t; }
  Value neg_scale(const Value& beta, const Value& q) const { return -(beta * q); }
  Value mul_sub(const Value&, const Value& t, const Value& beta, const Value& q) const {
    return t - beta * q;
  }
};

template <class Ring>
class Eliminator {
 public:
  using Value = typename Ring::Value;
  struct Entry {
    std::uint32_t col;
    Value val;
  };
  using Row = std::vector<Entry>;

  static constexpr double kDenseDensity = 0.30;
  static constexpr double kMaxDenseArea = 3.0e7;
  static constexpr int kCandidateRows = 8;

  Eliminator(Ring ring, std::size_t ncols, std::vector<Row> rows, bool record)
      : ring_(std::move(ring)),
        ncols_(ncols),
        rows_(std::move(rows)),
        record_(record),
        alive_(rows_.size(), 0),
        seen_(rows_.size(), 0),
        col_count_(ncols, 0),
        col_rows_(ncols) {}

  std::size_t run() {
    for (std::uint32_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i].empty()) continue;
      alive_[i] = 1;
      queue_.insert({rows_[i].size(), i});
      total_nnz_ += rows_[i].size();
      for (const auto& e : rows_[i]) {
        inc_col(e.col);
        col_rows_[e.col].push_back(i);
      }
    }
    while (!queue_.empty()) {
      if constexpr (Ring::kDenseFallback) {
        const double area = static_cast<double>(queue_.size()) * static_cast<double>(active_cols_);
        if (area <= kMaxDenseArea && static_cast<double>(total_nnz_) > kDenseDensity * area) {
          dense_phase();
          break;
        }
      }
      const auto [r, c] = choose_pivot();
      if (r == kNone) break;
      eliminate(r, c);
    }
    return rank_;
  }

  const std::vector<std::pair<std::uint32_t, Row>>& pivots() const { return pivots_; }

  // Rows still alive after run(); nonempty only for rings without a dense
  // fallback that ran out of admissible pivots.
  std::vector<Row> residual() const {
    std::vector<Row> out;
    for (const auto& [nnz, r] : queue_) out.push_back(rows_[r]);
    return out;
  }

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  void inc_col(std::uint32_t c) {
    if (col_count_[c]++ == 0) ++active_cols_;
  }
  void dec_col(std::uint32_t c) {
    if (--col_count_[c] == 0) --active_cols_;
  }

  std::pair<std::uint32_t, std::uint32_t> choose_pivot() const {
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    int best_quality = std::numeric_limits<int>::max();
    std::uint32_t br = kNone, bc = 0;
    int examined = 0;
    for (const auto& [nnz, r] : queue_) {
      if (examined >= kCandidateRows && br != kNone) break;
      bool any = false;
      for (const auto& e : rows_[r]) {
        if (!ring_.allow_pivot(e.val)) continue;
        any = true;
        const std::size_t cost = (nnz - 1) * (col_count_[e.col] - 1);
        const int q = ring_.quality(e.val);
        if (cost < best_cost || (cost == best_cost && q < best_quality)) {
          best_cost = cost;
          best_quality = q;
          br = r;
          bc = e.col;
        }
      }
      if (any) ++examined;
      if (best_cost == 0 && best_quality == 0) break;
    }
    return {br, bc};
  }

  void eliminate(std::uint32_t r, std::uint32_t c) {
    Row pivot = std::move(rows_[r]);
    rows_[r].clear();
    queue_.erase({pivot.size(), r});
    alive_[r] = 0;
    total_nnz_ -= pivot.size();
    Value pc{};
    for (const auto& e : pivot) {
      dec_col(e.col);
      if (e.col == c) pc = e.val;
    }
    const auto info = ring_.pivot_info(pc);

    ++stamp_;
    auto targets = std::move(col_rows_[c]);
    col_rows_[c] = {};
    for (std::uint32_t i : targets) {
      if (!alive_[i] || seen_[i] == stamp_) continue;
      seen_[i] = stamp_;
      auto& t = rows_[i];
      auto it = std::lower_bound(t.begin(), t.end(), c,
                                 [](const Entry& e, std::uint32_t col) { return e.col < col; });
      if (it == t.end() || it->col != c) continue;
      const auto [alpha, beta] = ring_.coefficients(it->val, info);
      queue_.erase({t.size(), i});
      total_nnz_ -= t.size();
      Row out = combine(i, t, pivot, alpha, beta);
      if constexpr (Ring::kNormalize) normalize(out);
      t = std::move(out);
      if (t.empty()) {
        alive_[i] = 0;
      } else {
        total_nnz_ += t.size();
        queue_.insert({t.size(), i});
      }
    }
    if (record_) pivots_.emplace_back(c, std::move(pivot));
    ++rank_;
  }

  Row combine(std::uint32_t ti, const Row& t, const Row& q, const Value& alpha, const Value& beta) {
    Row out;
    out.reserve(t.size() + q.size());
    std::size_t i = 0, j = 0;
    while (i < t.size() || j < q.size()) {
      if (j == q.size() || (i < t.size() && t[i].col < q[j].col)) {
        Value v = ring_.scale(alpha, t[i].val);
        if (ring_.is_zero(v)) {
          dec_col(t[i].col);
        } else {
          out.push_back({t[i].col, std::move(v)});
        }
        ++i;
      } else if (i == t.size() || q[j].col < t[i].col) {
        Value v = ring_.neg_scale(beta, q[j].val);
        if (!ring_.is_zero(v)) {
          inc_col(q[j].col);
          col_rows_[q[j].col].push_back(ti);
          out.push_back({q[j].col, std::move(v)});
        }
        ++j;
      } else {
        Value v = ring_.mul_sub(alpha, t[i].val, beta, q[j].val);
        if (ring_.is_zero(v)) {
          dec_col(t[i].col);
        } else {
          out.push_back({t[i].col, std::move(v)});
        }
        ++i;
        ++j;
      }
    }
    return out;
  }

  static void normalize(Row& row)
    requires std::is_same_v<Value, mpz_class>
  {
    if (row.empty()) return;
    mpz_class g = 0;
    for (const auto& e : row) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.val.get_mpz_t());
      if (g == 1) return;
    }
    for (auto& e : row) mpz_divexact(e.val.get_mpz_t(), e.val.get_mpz_t(), g.get_mpz_t());
  }
  static void normalize(Row&)
    requires(!std::is_same_v<Value, mpz_class>)
  {}

  // Finishes on a dense copy of the active submatrix once fill-in makes
  // sparse bookkeeping the bottleneck.
  void dense_phase() {
    std::vector<std::uint32_t> live;
    for (const auto& [nnz, r] : queue_) live.push_back(r);
    std::vector<std::uint32_t> cols;
    for (std::uint32_t c = 0; c < ncols_; ++c)
      if (col_count_[c] > 0) cols.push_back(c);
    std::vector<std::int64_t> slot(ncols_, -1);
    for (std::size_t k = 0; k < cols.size(); ++k) slot[cols[k]] = static_cast<std::int64_t>(k);

    const std::size_t m = live.size(), k = cols.size();
    std::vector<std::vector<Value>> a(m, std::vector<Value>(k, Value(0)));
    for (std::size_t i = 0; i < m; ++i)
      for (const auto& e : rows_[live[i]]) a[i][static_cast<std::size_t>(slot[e.col])] = e.val;

    std::size_t top = 0;
    for (std::size_t j = 0; j < k && top < m; ++j) {
      std::size_t best = m;
      int best_q = std::numeric_limits<int>::max();
      for (std::size_t i = top; i < m; ++i) {
        if (ring_.is_zero(a[i][j])) continue;
        const int q = ring_.quality(a[i][j]);
        if (q < best_q) {
          best_q = q;
          best = i;
          if (q == 0) break;
        }
      }
      if (best == m) continue;
      std::swap(a[top], a[best]);
      const auto info = ring_.pivot_info(a[top][j]);
      for (std::size_t i = top + 1; i < m; ++i) {
        if (ring_.is_zero(a[i][j])) continue;
        const auto [alpha, beta] = ring_.coefficients(a[i][j], info);
        for (std::size_t l = j; l < k; ++l) {
          if (ring_.is_zero(a[top][l])) {
            a[i][l] = ring_.scale(alpha, a[i][l]);
          } else {
            a[i][l] = ring_.mul_sub(alpha, a[i][l], beta, a[top][l]);
          }
        }
        if constexpr (Ring::kNormalize) normalize_dense(a[i], j);
      }
      if (record_) {
        Row row;
        for (std::size_t l = j; l < k; ++l)
          if (!ring_.is_zero(a[top][l])) row.push_back({cols[l], a[top][l]});
        pivots_.emplace_back(cols[j], std::move(row));
      }
      ++top;
      ++rank_;
    }
    for (auto r : live) {
      alive_[r] = 0;
      rows_[r].clear();
    }
    queue_.clear();
  }

  static void normalize_dense(std::vector<Value>& row, std::size_t from)
    requires std::is_same_v<Value, mpz_class>
  {
    mpz_class g = 0;
    for (std::size_t l = from; l < row.size(); ++l) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), row[l].get_mpz_t());
      if (g == 1) return;
    }
    if (g == 0) return;
    for (std::size_t l = from; l < row.size(); ++l)
      mpz_divexact(row[l].get_mpz_t(), row[l].get_mpz_t(), g.get_mpz_t());
  }
  static void normalize_dense(std::vector<Value>&, std::size_t)
    requires(!std::is_same_v<Value, mpz_class>)
  {}

  Ring ring_;
  std::size_t ncols_;
  std::vector<Row> rows_;
  bool record_;
  std::vector<char> alive_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
  std::vector<std::uint32_t> col_count_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::set<std::pair<std::size_t, std::uint32_t>> queue_;
  std::size_t total_nnz_ = 0;
  std::size_t active_cols_ = 0;
  std::size_t rank_ = 0;
  std::vector<std::pair<std::uint32_t, Row>> pivots_;
};

}  // namespace birsym::detail
