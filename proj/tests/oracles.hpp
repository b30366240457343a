#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's elimination, SNF, group or relation code: dense textbook
// algorithms over plain residue tuples only.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Tuple = std::vector<std::int64_t>;
using DenseQ = std::vector<std::vector<mpq_class>>;
using DenseZ = std::vector<std::vector<mpz_class>>;

inline std::size_t rank_q(DenseQ m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const mpq_class f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline DenseQ to_q(const DenseZ& m) {
  DenseQ q(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const auto& v : m[i]) q[i].emplace_back(v);
  return q;
}

// Elementary divisors (including 1s, excluding zeros) by repeated gcd
// pivoting on the smallest nonzero entry.
inline std::vector<mpz_class> snf_divisors(DenseZ m) {
  std::vector<mpz_class> out;
  std::size_t top = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  while (top < std::min(rows, cols)) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = top; i < rows; ++i)
      for (std::size_t j = top; j < cols; ++j)
        if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) pr = i, pc = j;
    if (pr == rows) break;
    std::swap(m[top], m[pr]);
    for (auto& row : m) std::swap(row[top], row[pc]);
    bool clean = true;
    for (std::size_t i = top + 1; i < rows; ++i) {
      const mpz_class q = m[i][top] / m[top][top];
      for (std::size_t j = top; j < cols; ++j) m[i][j] -= q * m[top][j];
      if (m[i][top] != 0) clean = false;
    }
    for (std::size_t j = top + 1; j < cols; ++j) {
      const mpz_class q = m[top][j] / m[top][top];
      for (std::size_t i = top; i < rows; ++i) m[i][j] -= q * m[i][top];
      if (m[top][j] != 0) clean = false;
    }
    if (!clean) continue;
    bool divides = true;
    for (std::size_t i = top + 1; i < rows && divides; ++i)
      for (std::size_t j = top + 1; j < cols && divides; ++j)
        if (m[i][j] % m[top][top] != 0) {
          for (std::size_t k = top; k < cols; ++k) m[top][k] += m[i][k];
          divides = false;
        }
    if (!divides) continue;
    out.push_back(abs(m[top][top]));
    ++top;
  }
  return out;
}

inline std::vector<std::int64_t> torsion_of(const DenseZ& m) {
  std::vector<std::int64_t> t;
  for (const auto& d : snf_divisors(m))
    if (d > 1) t.push_back(d.get_si());
  std::sort(t.begin(), t.end());
  return t;
}

inline std::int64_t product(const Tuple& f) {
  return std::accumulate(f.begin(), f.end(), std::int64_t{1}, std::multiplies<>());
}

inline std::vector<Tuple> all_elements(const Tuple& factors) {
  std::vector<Tuple> out{Tuple(factors.size(), 0)};
  for (std::size_t i = 0; i < factors.size(); ++i) {
    std::vector<Tuple> next;
    for (const auto& t : out)
      for (std::int64_t v = 0; v < factors[i]; ++v) {
        auto u = t;
        u[i] = v;
        next.push_back(u);
      }
    out = std::move(next);
  }
  return out;
}

inline Tuple add(const Tuple& factors, const Tuple& a, const Tuple& b) {
  Tuple c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % factors[i];
  return c;
}

inline Tuple neg(const Tuple& factors, const Tuple& a) {
  Tuple c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = (factors[i] - a[i]) % factors[i];
  return c;
}

inline Tuple sub(const Tuple& factors, const Tuple& a, const Tuple& b) { return add(factors, a, neg(factors, b)); }

// Closure of the subgroup generated by elems.
inline std::set<Tuple> closure(const Tuple& factors, const std::vector<Tuple>& elems) {
  std::set<Tuple> seen{Tuple(factors.size(), 0)};
  std::vector<Tuple> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Tuple> next;
    for (const auto& x : frontier)
      for (const auto& g : elems) {
        auto y = add(factors, x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

inline bool generates(const Tuple& factors, const std::vector<Tuple>& elems) {
  return static_cast<std::int64_t>(closure(factors, elems).size()) == product(factors);
}

// Relation presentation of M_n (plain), M_n^- (minus) or M_1^+ (plus) on
// sorted generating n-tuples of residue tuples.
struct Presentation {
  std::vector<std::vector<Tuple>> basis;
  DenseZ rows;
};

inline Presentation presentation(const Tuple& factors, int n, char variant) {
  const auto els = all_elements(factors);
  Presentation p;
  std::map<std::vector<Tuple>, std::size_t> index;
  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
  for (;;) {
    std::vector<Tuple> key;
    for (auto i : pick) key.push_back(els[i]);
    if (generates(factors, key)) {
      std::sort(key.begin(), key.end());
      if (!index.count(key)) {
        index[key] = p.basis.size();
        p.basis.push_back(key);
      }
    }
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == els.size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  auto col = [&](std::vector<Tuple> k) {
    std::sort(k.begin(), k.end());
    return index.at(k);
  };
  for (const auto& key : p.basis) {
    if (variant == 'p') {
      std::vector<mpz_class> r(p.basis.size(), 0);
      r[col(key)] += 1;
      r[col({neg(factors, key[0])})] -= 1;
      p.rows.push_back(r);
      continue;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        std::vector<mpz_class> r(p.basis.size(), 0);
        auto b1 = key, b2 = key;
        b1[i] = sub(factors, key[i], key[j]);
        b2[j] = sub(factors, key[j], key[i]);
        r[col(key)] += 1;
        r[col(b1)] -= 1;
        r[col(b2)] -= 1;
        p.rows.push_back(r);
      }
      if (variant == 'm') {
        std::vector<mpz_class> r(p.basis.size(), 0);
        auto b = key;
        b[i] = neg(factors, key[i]);
        r[col(key)] += 1;
        r[col(b)] += 1;
        p.rows.push_back(r);
      }
    }
  }
  return p;
}

inline std::int64_t dimension(const Presentation& p) {
  return static_cast<std::int64_t>(p.basis.size()) - static_cast<std::int64_t>(p.rows.empty() ? 0 : rank_q(to_q(p.rows)));
}

inline std::int64_t phi(std::int64_t n) {
  std::int64_t r = 0;
  for (std::int64_t k = 1; k <= n; ++k) r += std::gcd(k, n) == 1;
  return r;
}

// Invariant-factor chains d_1 | d_2 | ... with every d_i >= 2 and product at
// most bound: one entry per isomorphism class of nontrivial abelian groups.
inline void chains(std::int64_t bound, Tuple& cur, std::int64_t prod, std::vector<Tuple>& out) {
  if (!cur.empty()) out.push_back(cur);
  const std::int64_t step = cur.empty() ? 1 : cur.back();
  for (std::int64_t d = cur.empty() ? 2 : cur.back(); prod * d <= bound; d += step) {
    cur.push_back(d);
    chains(bound, cur, prod * d, out);
    cur.pop_back();
  }
}

inline std::vector<Tuple> abelian_groups_up_to(std::int64_t bound) {
  std::vector<Tuple> out;
  Tuple cur;
  chains(bound, cur, 1, out);
  return out;
}

inline DenseZ random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int density_pct,
                            std::int64_t range) {
  std::uniform_int_distribution<int> pct(0, 99);
  std::uniform_int_distribution<std::int64_t> val(-range, range);
  DenseZ m(rows, std::vector<mpz_class>(cols, 0));
  for (auto& r : m)
    for (auto& v : r)
      if (pct(rng) < density_pct) v = val(rng);
  return m;
}

}  // namespace oracle
