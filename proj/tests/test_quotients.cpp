#include <doctest.h>

#include <set>

#include "birsym/quotients.hpp"
#include "oracles.hpp"

using namespace birsym;

namespace {

DimensionOptions with_torsion() {
  DimensionOptions o;
  o.torsion = true;
  return o;
}

}  // namespace

TEST_SUITE("quotients") {
  TEST_CASE("dimensions and torsion agree with a dense oracle") {
    const std::vector<std::pair<oracle::Tuple, int>> cases = {
        {{2}, 1}, {{5}, 1}, {{6}, 1},    {{7}, 2},    {{8}, 2},    {{9}, 2}, {{2, 2}, 2},
        {{2, 4}, 2}, {{3, 3}, 2}, {{2, 6}, 2}, {{2, 2}, 3}, {{4}, 3}, {{5}, 3}};
    for (const auto& [f, n] : cases) {
      const auto g = make_group(f);
      for (auto [v, c] : {std::pair{Variant::Plain, 'a'}, std::pair{Variant::Minus, 'm'}}) {
        const auto expect = oracle::presentation(f, n, c);
        const auto got = dimension(g, n, v, with_torsion());
        INFO(g.literal(), " n=", n, " ", to_string(v));
        CHECK(got.generators == static_cast<std::int64_t>(expect.basis.size()));
        CHECK(got.dim == oracle::dimension(expect));
        if (!expect.rows.empty()) CHECK(got.torsion == oracle::torsion_of(expect.rows));
      }
      if (n == 1) {
        const auto expect = oracle::presentation(f, 1, 'p');
        CHECK(dimension(g, 1, Variant::Plus).dim == oracle::dimension(expect));
      }
    }
  }

  TEST_CASE("plus needs n = 1") {
    CHECK_THROWS_AS(build_relations(parse_group("5"), 2, Variant::Plus), std::invalid_argument);
    CHECK(parse_variant("minus") == Variant::Minus);
    CHECK_THROWS_AS(parse_variant("other"), std::invalid_argument);
  }

  TEST_CASE("M_1^+ of C_N has dimension phi(N)/2 for N >= 3") {
    for (std::int64_t N = 3; N <= 20; ++N)
      CHECK(dimension(make_group({N}), 1, Variant::Plus).dim == euler_phi(N) / 2);
  }

  TEST_CASE("cyclic table values") {
    // (N, d, d^-)
    const std::vector<std::array<std::int64_t, 3>> table = {{2, 0, 0}, {3, 1, 0}, {5, 2, 0},   {9, 5, 1},
                                                            {12, 7, 2}, {16, 10, 3}, {19, 16, 7}};
    for (const auto& [N, d, dm] : table) {
      const auto g = make_group({N});
      CHECK(dimension(g, 2, Variant::Plain).dim == d);
      CHECK(dimension(g, 2, Variant::Minus).dim == dm);
    }
  }

  TEST_CASE("rows lie in their own span and survive re-canonicalization") {
    for (const auto* lit : {"7", "2x4", "3x3"}) {
      const auto g = parse_group(lit);
      for (auto v : {Variant::Plain, Variant::Minus}) {
        const auto sys = build_relations(g, 2, v);
        const RowSpan span(sys.rel);
        std::set<FormalSum::Terms> rows;
        for (std::size_t r = 0; r < sys.rel.nrows(); ++r) {
          const auto x = sys.row_sum(r);
          CHECK(span.contains(sys.coordinates(x)));
          rows.insert(x.terms());
        }
        const auto again = build_relations_on(g, 2, v, sys.basis);
        std::set<FormalSum::Terms> rows2;
        for (std::size_t r = 0; r < again.rel.nrows(); ++r) rows2.insert(again.row_sum(r).terms());
        CHECK(rows == rows2);
      }
    }
  }

  TEST_CASE("minus dimension never exceeds plain") {
    for (const auto& f : oracle::abelian_groups_up_to(24))
      for (int n : {1, 2}) {
        const auto g = make_group(f);
        CHECK(dimension(g, n, Variant::Minus).dim <= dimension(g, n, Variant::Plain).dim);
      }
  }

  TEST_CASE("grading: full minus dimension is phi(N)/2 times the class-1 block") {
    for (const auto* lit : {"3x3", "4x4", "3x6", "5x5", "4x8", "6x6"}) {
      const auto g = parse_group(lit);
      const auto N = g.factors()[0];
      for (auto v : {Variant::Plain, Variant::Minus}) {
        const auto full = dimension(g, 2, v);
        for (const auto& k : det_classes(g)) {
          const auto block = dimension_of(build_relations_on(g, 2, v, enumerate_det_class(g, k)));
          CHECK(full.dim == euler_phi(N) / 2 * block.dim);
        }
        DimensionOptions o = with_torsion();
        o.grading = true;
        const auto graded = dimension(g, 2, v, o);
        const auto plain = dimension(g, 2, v, with_torsion());
        CHECK(graded.dim == plain.dim);
        CHECK(graded.torsion == plain.torsion);
        CHECK(graded.generators == plain.generators);
      }
    }
  }

  TEST_CASE("minus torsion of C_N for 5 <= N <= 12") {
    for (std::int64_t N = 5; N <= 12; ++N) {
      const auto units = N % 2 ? euler_phi(N) : euler_phi(N) + euler_phi(N / 2);
      const auto r = dimension(make_group({N}), 2, Variant::Minus, with_torsion());
      CHECK(r.torsion == std::vector<std::int64_t>(static_cast<std::size_t>(units - 1), 2));
    }
  }

  TEST_CASE("report JSON round-trips") {
    auto r = dimension(parse_group("9"), 2, Variant::Minus, with_torsion());
    const auto back = DimensionReport::from_json(r.to_json());
    CHECK(back.to_json() == r.to_json());
    r = dimension(parse_group("3x3"), 2, Variant::Plain);
    CHECK(r.to_json()["torsion"].is_null());
    CHECK(DimensionReport::from_json(r.to_json()).to_json() == r.to_json());
  }

  TEST_CASE("kernel of the minus projection") {
    for (const auto* lit : {"5", "7", "9", "2x4", "3x3"}) {
      const auto g = parse_group(lit);
      CHECK(kernel_dimension(g, 2) == kernel_span_dimension(g, 2));
    }
  }
}
