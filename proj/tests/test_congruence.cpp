#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "birsym/congruence.hpp"
#include "oracles.hpp"

using namespace birsym;

namespace {

bool all_pass(const std::vector<CheckResult>& checks) {
  bool ok = !checks.empty();
  for (const auto& c : checks) {
    INFO(c.check, " ", c.group, " ", c.to_json().dump());
    CHECK(c.pass);
    ok = ok && c.pass;
  }
  return ok;
}

// Random SL2(Z) element as a product of generators S and T^k.
IntMatrix2 random_sl2(std::mt19937_64& rng) {
  IntMatrix2 m;
  const IntMatrix2 S{0, -1, 1, 0};
  for (int i = 0; i < 6; ++i) {
    const long k = static_cast<long>(rng() % 9) - 4;
    m = m * IntMatrix2{1, k, 0, 1} * S;
  }
  return m;
}

std::int64_t mod(const BigInt& x, std::int64_t m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r.get_si();
}

}  // namespace

TEST_SUITE("congruence") {
  TEST_CASE("levels") {
    CHECK_THROWS_AS(make_level(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_level(3, 0), std::invalid_argument);
    CHECK(make_level(3, 2).L() == 6);
    CHECK(level_name(make_level(3, 2)) == "Gamma(3,6)");
  }

  TEST_CASE("coset count equals the index formula and a direct count") {
    for (std::int64_t N = 2; N <= 6; ++N)
      for (std::int64_t M = 1; N * M <= 12; ++M) {
        const auto level = make_level(N, M);
        const auto cosets = enumerate_cosets(level);
        CHECK(static_cast<std::int64_t>(cosets.size()) == coset_index_formula(level));
        CHECK(std::is_sorted(cosets.begin(), cosets.end()));
        // Direct count: (a, b) mod N, (c, d) mod MN with ad - bc = 1 mod N
        // and the columns generating C_N x C_MN.
        std::int64_t direct = 0;
        const oracle::Tuple f{N, N * M};
        for (std::int64_t a = 0; a < N; ++a)
          for (std::int64_t b = 0; b < N; ++b)
            for (std::int64_t c = 0; c < N * M; ++c)
              for (std::int64_t d = 0; d < N * M; ++d)
                if (((a * d - b * c) % N + N) % N == 1 % N && oracle::generates(f, {{a, c}, {b, d}})) ++direct;
        CHECK(direct == static_cast<std::int64_t>(cosets.size()));
      }
  }

  TEST_CASE("lift then reduce is the identity") {
    for (std::int64_t N = 2; N <= 6; ++N)
      for (std::int64_t M = 1; N * M <= 12; ++M) {
        const auto level = make_level(N, M);
        for (const auto& s : enumerate_cosets(level)) {
          const auto m = lift_coset(s, level);
          CHECK(m.det() == 1);
          CHECK(coset_of(m, level) == s);
        }
      }
  }

  TEST_CASE("random SL2(Z) elements reduce to enumerated symbols") {
    std::mt19937_64 rng(2024);
    for (const auto& [N, M] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 1}, {2, 3}, {3, 2}, {4, 2}}) {
      const auto level = make_level(N, M);
      const auto cosets = enumerate_cosets(level);
      const std::set<CosetSymbol> all(cosets.begin(), cosets.end());
      for (int i = 0; i < 1000; ++i) {
        const auto m = random_sl2(rng);
        REQUIRE(m.det() == 1);
        const auto s = coset_of(m, level);
        CHECK(all.count(s) == 1);
        CHECK(is_coset_symbol(s, level));
      }
    }
  }

  TEST_CASE("membership: a = 1 mod MN follows from the definition") {
    std::mt19937_64 rng(77);
    for (const auto& [N, M] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 1}, {2, 2}, {3, 2}, {2, 3}}) {
      const auto level = make_level(N, M);
      const auto L = level.L();
      for (int made = 0; made < 200;) {
        // Bottom row (L z, 1 + L w) coprime, completed to det 1 and shifted
        // so that b = 0 mod N.
        const BigInt c = L * (static_cast<long>(rng() % 21) - 10);
        const BigInt d = 1 + L * (static_cast<long>(rng() % 21) - 10);
        BigInt g, x, y;
        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), d.get_mpz_t(), c.get_mpz_t());
        if (g != 1) continue;
        IntMatrix2 m{x, -y, c, d};
        REQUIRE(m.det() == 1);
        const std::int64_t k = (N - mod(m.b, N)) % N;
        m.a += k * c;
        m.b += k * d;
        ++made;
        REQUIRE(mod(m.a, N) == 1 % N);
        REQUIRE(mod(m.b, N) == 0);
        CHECK(mod(m.a, L) == 1 % L);
        CHECK(gamma_member(m, level));
        CHECK(coset_of(m, level) == CosetSymbol{1 % N, 0, 0, 1 % L});
      }
      CHECK(gamma_member(IntMatrix2{1, N, 0, 1}, level));
      CHECK(gamma_member(IntMatrix2{1, 0, L, 1}, level));
      CHECK_FALSE(gamma_member(IntMatrix2{0, -1, 1, 0}, level));
    }
  }

  TEST_CASE("cusps of Gamma(N)") {
    // Gamma(N) has N^2/2 prod(1 - p^-2) cusps for N >= 3.
    CHECK(cusp_count(make_level(3, 1)) == 4);
    CHECK(cusp_count(make_level(4, 1)) == 6);
    CHECK(cusp_count(make_level(5, 1)) == 12);
    CHECK(cusp_count(make_level(6, 1)) == 12);
    for (std::int64_t N = 3; N <= 8; ++N) {
      const auto level = make_level(N, 1);
      CHECK(cusp_count_formula(level) == cusp_count(level));
    }
    CHECK_THROWS(cusp_count(make_level(2, 1)));
  }

  TEST_CASE("genus of Gamma(N)") {
    // X(N) has genus 0, 0, 0, 1, 3, 5 for N = 3..8.
    const std::int64_t expect[] = {0, 0, 0, 1, 3, 5};
    for (std::int64_t N = 3; N <= 8; ++N) {
      const auto level = make_level(N, 1);
      CHECK(genus_formula(level) == expect[N - 3]);
      CHECK(genus_riemann_hurwitz(level) == expect[N - 3]);
    }
  }

  TEST_CASE("Manin spaces for N >= 3: 2g + cusps - 1, torsion free") {
    for (std::int64_t N = 3; N <= 6; ++N)
      for (std::int64_t M = 1; N * M <= 12; ++M) {
        const auto level = make_level(N, M);
        DimensionOptions o;
        o.torsion = true;
        const auto space = manin_space(level, false, o);
        CHECK(space.system.relation3_vacuous);
        CHECK(space.report.dim == 2 * genus_riemann_hurwitz(level) + cusp_count(level) - 1);
        CHECK(space.report.torsion.empty());
      }
  }

  TEST_CASE("fixed cusps at level (2, 2M)") {
    for (std::int64_t M = 3; M <= 8; ++M) {
      CHECK(eps_fixed_formula(M) == eps_fixed_enumerated(M));
      CHECK(cusp_classes_enumerated(M) == cusp_count(make_level(2, M)));
    }
    CHECK_THROWS(eps_fixed_formula(2));
  }

  TEST_CASE("closed forms match brute force") {
    DimensionOptions o;
    o.torsion = true;
    for (const auto* lit : {"2", "3", "4", "2x2", "5", "9", "12", "2x6", "2x8", "3x3", "3x9", "4x8", "2x2x2"}) {
      const auto g = parse_group(lit);
      const auto brute = dimension(g, 2, Variant::Minus, o);
      const auto formula = closed_form(g);
      INFO(lit);
      CHECK(formula.dim == brute.dim);
      CHECK(formula.torsion == brute.torsion);
    }
  }

  TEST_CASE("C_p x C_p dimension formulas") {
    CHECK(pxp_dimensions(5) == std::pair<std::int64_t, std::int64_t>{46, 22});
    CHECK(pxp_dimensions(7) == std::pair<std::int64_t, std::int64_t>{159, 87});
    CHECK(difference_formula(parse_group("5x5")) == 24);
    CHECK(difference_formula(parse_group("9")) == 4);
    CHECK_THROWS_AS(difference_formula(parse_group("4")), std::invalid_argument);
  }

  TEST_CASE("symbol maps are mutually inverse") {
    for (const auto* lit : {"3x3", "2x6", "3x6", "4x8"}) {
      const auto g = parse_group(lit);
      const auto [N, M] = bicyclic_level(g);
      const auto level = make_level(N, M);
      std::set<CosetSymbol> seen;
      for (const auto& key : enumerate_generators(g, 2)) {
        const auto s = symbol_to_coset(g, key);
        CHECK(is_coset_symbol(s, level));
        CHECK(coset_to_symbol(g, s) == key);
        seen.insert(s);
      }
    }
  }

  TEST_CASE("isomorphism with Manin symbols") {
    for (const auto& [N, M] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 1}, {4, 1}, {2, 3}, {3, 2}})
      CHECK(all_pass(iso_check(make_level(N, M))));
  }

  TEST_CASE("level invariants JSON") {
    const auto j = level_invariants(make_level(3, 1)).to_json();
    CHECK(j["N"] == 3);
    CHECK(j["index"] == 24);
    CHECK(j["cusps"] == 4);
    CHECK(j["genus"] == 0);
    CHECK_FALSE(j.contains("fixed_cusps"));
    CHECK(level_invariants(make_level(2, 3)).to_json()["fixed_cusps"] == 6);
  }
}
