#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "birsym/exactla.hpp"
#include "birsym/symbols.hpp"
#include "oracles.hpp"

using namespace birsym;

namespace {

std::size_t count_generating_tuples(const oracle::Tuple& f, int n) {
  std::set<std::vector<oracle::Tuple>> keys;
  const auto els = oracle::all_elements(f);
  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
  for (;;) {
    std::vector<oracle::Tuple> key;
    for (auto i : pick) key.push_back(els[i]);
    if (oracle::generates(f, key)) {
      std::sort(key.begin(), key.end());
      keys.insert(key);
    }
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == els.size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return keys.size();
}

}  // namespace

TEST_SUITE("symbols") {
  TEST_CASE("canonicalize sorts and is permutation invariant") {
    const auto g = parse_group("12");
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<CharCode> raw{1, static_cast<CharCode>(rng() % 12), static_cast<CharCode>(rng() % 12)};
      const auto key = canonicalize(g, raw);
      CHECK(std::is_sorted(key.entries.begin(), key.entries.end()));
      std::shuffle(raw.begin(), raw.end(), rng);
      CHECK(canonicalize(g, raw) == key);
    }
    CHECK_THROWS_AS(canonicalize(g, {2, 4}), std::invalid_argument);
  }

  TEST_CASE("enumerate_generators matches a closure-based count") {
    for (const auto& [f, n] : std::vector<std::pair<oracle::Tuple, int>>{
             {{5}, 1}, {{6}, 2}, {{2, 2}, 2}, {{2, 4}, 2}, {{3, 3}, 2}, {{2, 2}, 3}, {{4}, 3}, {{2, 2, 2}, 2}}) {
      const auto g = make_group(f);
      const auto keys = enumerate_generators(g, n);
      CHECK(keys.size() == count_generating_tuples(f, n));
      CHECK(std::is_sorted(keys.begin(), keys.end()));
      for (const auto& k : keys) {
        std::vector<Character> chars;
        for (auto c : k.entries) chars.emplace_back(g, c);
        CHECK(spans_dual(chars, g));
      }
    }
  }

  TEST_CASE("enumeration is bounded") {
    Limits lim;
    lim.max_enumeration = 100;
    CHECK_THROWS_AS(enumerate_generators(parse_group("11"), 2, lim), BoundError);
    CHECK(enumerate_generators(parse_group("2x2x2"), 2).empty());
  }

  TEST_CASE("formal sums") {
    const SymbolKey a{{1, 2}}, b{{1, 3}};
    FormalSum x = FormalSum::basis(a, 2);
    x.add(b, frac(1, 2));
    x.add(a, -2);
    CHECK(x.size() == 1);
    CHECK(x.coefficient(b) == frac(1, 2));
    CHECK(x.coefficient(a) == 0);
    CHECK((x - x).empty());
    CHECK(x.scaled(4) == FormalSum::basis(b, 2));
  }

  TEST_CASE("determinant classes partition the rank-2 keys") {
    for (const auto* lit : {"3x3", "4x4", "5x5", "3x6", "4x8", "6x6", "7x7"}) {
      const auto g = parse_group(lit);
      const auto all = enumerate_generators(g, 2);
      std::size_t total = 0;
      std::set<std::size_t> sizes;
      for (const auto& k : det_classes(g)) {
        const auto cls = enumerate_det_class(g, k);
        for (const auto& key : cls) CHECK(det_class(g, key) == k);
        total += cls.size();
        sizes.insert(cls.size());
      }
      CHECK(total == all.size());
      CHECK(sizes.size() == 1);
      CHECK(det_classes(g).size() == static_cast<std::size_t>(euler_phi(g.factors()[0]) / 2));
    }
    CHECK_THROWS_AS(bicyclic_level(parse_group("3x4")), std::invalid_argument);
    CHECK(bicyclic_level(parse_group("3x9")) == std::pair<std::int64_t, std::int64_t>{3, 3});
  }

  TEST_CASE("scaling the first coordinate maps class 1 onto class k") {
    for (const auto* lit : {"3x3", "4x4", "5x5", "6x6", "7x7", "3x6", "5x10"}) {
      const auto g = parse_group(lit);
      const auto N = g.factors()[0];
      const auto base = enumerate_det_class(g, DetClass{1, N});
      for (const auto& k : det_classes(g)) {
        std::set<SymbolKey> image;
        for (const auto& key : base) {
          std::vector<CharCode> raw;
          for (auto c : key.entries) {
            auto r = g.decode(c);
            std::vector<std::int64_t> v(r.begin(), r.end());
            v[0] *= k.k;
            raw.push_back(g.encode(v));
          }
          image.insert(canonicalize(g, raw));
        }
        const auto target = enumerate_det_class(g, k);
        CHECK(image == std::set<SymbolKey>(target.begin(), target.end()));
      }
    }
  }
}
