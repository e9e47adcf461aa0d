#include <doctest.h>

#include "chebdyn/integrality.hpp"
#include "oracles.hpp"

using namespace chebdyn;

namespace {
std::vector<Rat> finite(const std::vector<Valuation>& v) {
  std::vector<Rat> out;
  for (const auto& x : v) out.push_back(x.value());
  return out;
}
}  // namespace

TEST_CASE("p-adic valuation") {
  CHECK(padic_valuation(Rat(12), 2) == Valuation(2L));
  CHECK(padic_valuation(Rat(1, 9), 3) == Valuation(-2L));
  CHECK(padic_valuation(Rat(0), 5).is_infinite());
  CHECK_THROWS_AS(padic_valuation(Rat(12), 4), DomainError);
  for (long n = 1; n < 500; ++n) REQUIRE(valuation_unchecked(n, 3) == oracle::valuation(n, 3));
}

TEST_CASE("chordal distance and lambda") {
  const Place inf = Place::archimedean(), two = Place::finite(2);
  CHECK(chordal_distance(ProjectivePoint::from(Rat(0)), ProjectivePoint::infinity(), inf) == 1.0);
  CHECK(chordal_distance(Rat(5, 3), Rat(5, 3), two) == 0.0);
  CHECK(chordal_distance(Rat(1), Rat(3), inf) == doctest::Approx(2.0 / 3.0));
  CHECK(lambda(Rat(1), Rat(3), inf) == doctest::Approx(std::log(1.5)));
  CHECK(lambda(ProjectivePoint::from(Rat(0)), ProjectivePoint::infinity(), inf) == 0.0);
  CHECK(lambda(Rat(0), Rat(4, 3), two) == doctest::Approx(std::log(4.0)));
  // Max-norm archimedean form: |0*3 - 4*1| / (1 * max(4, 3)) = 1.
  CHECK(lambda(Rat(0), Rat(4, 3), inf) == doctest::Approx(0.0));
  CHECK_THROWS_AS(lambda(Rat(2), Rat(2), inf), DomainError);
  // Symmetric; at most 1 at finite places. The max-norm archimedean form reaches 2,
  // e.g. between -1 and 1.
  CHECK(chordal_distance(Rat(-1), Rat(1), inf) == 2.0);
  for (long a = -5; a <= 5; ++a) {
    for (long b = 1; b <= 4; ++b) {
      for (const Place& v : {inf, two, Place::finite(3)}) {
        const double d = chordal_distance(Rat(a, b), Rat(b, 3), v);
        REQUIRE(d <= (v.is_archimedean() ? 2.0 : 1.0));
        REQUIRE(d == chordal_distance(Rat(b, 3), Rat(a, b), v));
      }
    }
  }
  const ApproxReal l = lambda_archimedean({{3.0, 0.0}, 0.0}, {{0.5, 0.0}, 0.0});
  CHECK(l.value == doctest::Approx(std::log(3.0) - std::log(2.5)));
}

TEST_CASE("meeting primes") {
  const auto m5 = meeting_primes(5, Rat(3));
  CHECK(m5.primes == std::map<BigInt, long>{{11, 1}});
  CHECK(meeting_primes(1, Rat(3)).primes.empty());
  CHECK(meeting_primes(4, Rat(4, 3)).primes == std::map<BigInt, long>{{2, 2}});
  CHECK_THROWS_AS(meeting_primes(6, Rat(1)), DomainError);
  // Oracle: trial-division factorization of the resultant.
  for (unsigned N = 1; N <= 40; ++N) {
    const auto m = meeting_primes(N, Rat(-5, 7));
    std::map<BigInt, long> want;
    for (const auto& p : oracle::factor(psi_at(N, Rat(-5, 7)))) ++want[p];
    REQUIRE(m.primes == want);
  }
}

TEST_CASE("S-integrality verdicts") {
  const auto a = is_s_integral(5, Rat(3), PlaceSet::parse("inf,11"));
  CHECK(a.is_s_integral);
  const auto b = is_s_integral(5, Rat(3), PlaceSet::parse("inf"));
  CHECK(!b.is_s_integral);
  REQUIRE(b.witness);
  CHECK(*b.witness == 11);
  CHECK(is_s_integral(1, Rat(3), PlaceSet::parse("inf")).is_s_integral);
  CHECK_THROWS_AS(PlaceSet::parse("2,3"), DomainError);
  CHECK_THROWS_AS(PlaceSet::parse("inf,4"), DomainError);
  CHECK(s_integral_verdict(BigInt(2 * 2 * 3), PlaceSet::parse("inf,2,3")));
  CHECK(!s_integral_verdict(BigInt(2 * 5), PlaceSet::parse("inf,2,3")));
}

TEST_CASE("Newton polygon") {
  for (long p : {2L, 3L, 5L, 7L}) {
    CHECK(finite(newton_polygon_valuations(IntPoly{-p, 0, 1}, p)) == std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
    CHECK(finite(newton_polygon_valuations(IntPoly{p, -1, 1}, p)) == std::vector<Rat>{0, 1});
    CHECK(finite(newton_polygon_valuations(IntPoly{1, 1, p}, p)) == std::vector<Rat>{-1, 0});
  }
  const auto z = newton_polygon_valuations(IntPoly{0, 0, 4, 2, 1}, 2);
  REQUIRE(z.size() == 4);
  CHECK(z[2].is_infinite());
  CHECK(z[0] == Valuation(1L));  // x^2 + 2x + 4: collinear points, both roots at 1
  CHECK(z[1] == Valuation(1L));
  // The valuations sum to v_p(g_0) - v_p(lead) whenever g_0 != 0.
  for (unsigned N = 1; N <= 40; ++N) {
    const IntPoly g = psi(N).reflected_shift(Rat(9, 4));
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
      Rat sum = 0;
      for (const auto& v : newton_polygon_valuations(g, p)) sum += v.value();
      REQUIRE(sum == oracle::valuation(g.coeff(0), p) - oracle::valuation(g.lead(), p));
    }
  }
}

TEST_CASE("modular Newton polygon agrees with the exact one") {
  long compared = 0;
  for (unsigned N = 1; N <= 100; ++N) {
    for (Rat b : {Rat(3), Rat(5, 7), Rat(-9, 5), Rat(11)}) {
      for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull}) {
        std::uint64_t M = 1;
        int K = 0;
        while (M * p < (1ull << 32)) {
          M *= p;
          ++K;
        }
        const auto vm = newton_polygon_valuations_mod(reflected_shift_mod(psi_mod(N, M), b, M), p, K);
        if (!vm) continue;
        REQUIRE(finite(newton_polygon_valuations(psi(N).reflected_shift(b), BigInt(static_cast<unsigned long>(p)))) ==
                *vm);
        ++compared;
      }
    }
  }
  CHECK(compared > 1500);
}

TEST_CASE("root of unity valuation") {
  CHECK(root_of_unity_valuation(2, 2) == Valuation(1L));
  CHECK(root_of_unity_valuation(9, 3) == Valuation(Rat(1, 6)));
  CHECK(root_of_unity_valuation(5, 3) == Valuation(0L));
  CHECK(root_of_unity_valuation(1, 3).is_infinite());
  CHECK(root_of_unity_valuation(8, 2) == Valuation(Rat(1, 4)));
}

TEST_CASE("close p-adic orbit points") {
  const auto r = near_point_check(Rat(3), 11, 100);
  REQUIRE(!r.flagged_orbits.empty());
  CHECK(r.flagged_orbits.front().N == 5);
  // x^2 - 7x + 11 at 11: one root of valuation 0, one of valuation 1.
  CHECK(r.flagged_orbits.front().max_valuation == 1);
  // 1/2 is 7-adically close to sqrt 2: (1/2 - sqrt 2)(1/2 + sqrt 2) = -7/4.
  const auto half = near_point_check(Rat(1, 2), 7, 50);
  REQUIRE(half.flagged_orbits.size() == 1);
  CHECK(half.flagged_orbits[0].N == 8);
  CHECK(half.flagged_orbits[0].max_valuation == 1);
  const auto small = near_point_check(Rat(3), 2, 3);
  REQUIRE(small.flagged_orbits.size() == 1);
  CHECK(small.flagged_orbits[0].N == 3);
  CHECK(small.flagged_orbits[0].max_valuation == 2);
  CHECK(small.flagged_points == 1);
  CHECK(small.holds());
  // Further out the 1/(p-1) threshold is met a second time: v_2(3 - 1) = 1 at N = 6.
  const auto wide = near_point_check(Rat(3), 2, 500);
  CHECK(wide.flagged_points == 2);
  CHECK(!wide.holds());
  CHECK(wide.holds_strict());
}

TEST_CASE("archimedean proximity") {
  const auto a = arch_proximity(5, Rat(3));
  CHECK(a.value == doctest::Approx(-std::log(3.0 - 2 * std::cos(2 * std::numbers::pi / 5))));
  CHECK(a.exponent == 1);
  const auto b = arch_proximity(5, Rat(6181, 10000));
  CHECK(b.value == doctest::Approx(-std::log(0.6181 - 2 * std::cos(2 * std::numbers::pi / 5))).epsilon(1e-9));
  // A rational within 1e-30 of 2cos(2 pi / 7) needs escalated precision.
  const Rat close(BigInt("1246979603717467061050009768008480"), BigInt("1000000000000000000000000000000000"));
  const auto c = arch_proximity(7, close);
  CHECK(c.value > 60.0);
  CHECK(arch_proximity(1, Rat(10)).value == doctest::Approx(-std::log(8.0)));
  CHECK(c.exponent == 1);
  CHECK_THROWS_AS(arch_proximity(6, Rat(1)), DomainError);
}
