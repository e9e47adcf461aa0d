#include <doctest.h>

#include <random>

#include "chebdyn/continued_fraction.hpp"
#include "chebdyn/factor.hpp"
#include "chebdyn/int_poly.hpp"
#include "chebdyn/resultant.hpp"
#include "chebdyn/roots.hpp"
#include "oracles.hpp"

using namespace chebdyn;

namespace {
std::vector<BigInt> vec(const IntPoly& f) { return {f.coeffs().begin(), f.coeffs().end()}; }
}  // namespace

TEST_CASE("rationals parse and canonicalize") {
  CHECK(parse_rat("6/-4") == Rat(-3, 2));
  CHECK(parse_rat("17") == Rat(17));
  CHECK_THROWS_AS(parse_rat("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rat("abc"), DomainError);
  CHECK_THROWS_AS(parse_rat("0.5"), DomainError);
  CHECK(to_string(Rat(-3, 2)) == "-3/2");
}

TEST_CASE("log_abs of huge integers") {
  BigInt n;
  mpz_ui_pow_ui(n.get_mpz_t(), 10, 5000);
  CHECK(log_abs(n) == doctest::Approx(5000 * std::log(10.0)).epsilon(1e-14));
  CHECK(log_abs(Rat(1, 8)) == doctest::Approx(-std::log(8.0)));
}

TEST_CASE("valuation ordering") {
  CHECK(Valuation(Rat(1, 2)) < Valuation(1L));
  CHECK(Valuation(100L) < Valuation::infinity());
  CHECK(Valuation::infinity() == Valuation::infinity());
}

TEST_CASE("polynomial arithmetic") {
  const IntPoly f{-1, 1, 1};  // x^2 + x - 1
  CHECK(f.eval(Rat(3)) == 11);
  CHECK(f.eval_homogeneous(3, 2) == 9 + 6 - 4);
  CHECK((f * IntPoly{1, 1}).exact_div(IntPoly{1, 1}) == f);
  CHECK_THROWS_AS(f.exact_div(IntPoly{1, 2}), DomainError);
  CHECK(IntPoly::primitive({BigInt(-4), BigInt(6), BigInt(-2)}) == IntPoly{2, -3, 1});
  CHECK(gcd(IntPoly{-1, 0, 1}, IntPoly{1, 2, 1}) == IntPoly{1, 1});
  CHECK(!is_squarefree(IntPoly{1, 2, 1}));
  // reflected_shift: s^d f(b - x), roots b - root(f).
  const IntPoly g = f.reflected_shift(Rat(3));
  CHECK(g == IntPoly{11, -7, 1});
  const IntPoly h = IntPoly{0, 1}.reflected_shift(Rat(4, 3));
  CHECK(h == IntPoly{4, -3});
}

TEST_CASE("resultant examples") {
  CHECK(resultant(IntPoly{-1, 1, 1}, IntPoly{-3, 1}) == 11);
  CHECK(resultant(IntPoly{0, 1}, IntPoly{0, 1}) == 0);
  CHECK(resultant(IntPoly{1, 0, 1}, IntPoly{-2, 0, 1}) == 9);
  CHECK_THROWS_AS(resultant(IntPoly{}, IntPoly{1, 1}), DomainError);
  // Res(f, s x - r) = s^deg f f(r/s)
  CHECK(resultant(IntPoly{-1, 1, 1}, IntPoly{-3, 2}) == 2 * 2 * (Rat(9, 4) + Rat(3, 2) - 1));
}

TEST_CASE("resultant against a Bareiss Sylvester oracle") {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<long> coef(-9, 9), deg(1, 6);
  for (int t = 0; t < 300; ++t) {
    auto rnd = [&] {
      std::vector<BigInt> c(deg(gen) + 1);
      for (auto& x : c) x = coef(gen);
      if (c.back() == 0) c.back() = 1;
      return IntPoly(c);
    };
    const IntPoly f = rnd(), g = rnd();
    const BigInt syl = oracle::sylvester(vec(f), vec(g));
    const int sgn = (f.degree() * g.degree()) % 2 ? -1 : 1;
    REQUIRE(sylvester_resultant(f, g) == syl);
    REQUIRE(resultant(f, g) == sgn * syl);
  }
}

TEST_CASE("factorization") {
  CHECK(factorize(12) == std::vector<BigInt>{2, 2, 3});
  CHECK(factorize(1).empty());
  CHECK(factorize(2207) == std::vector<BigInt>{2207});
  CHECK_THROWS_AS(factorize(0), DomainError);
  // Rho stage: product of two primes above the trial-division bound.
  const BigInt p("1000000007"), q("998244353"), r("4294967311");
  CHECK(factorize(p * q * r) == std::vector<BigInt>{q, p, r});
  for (long n = 2; n < 3000; ++n) REQUIRE(factorize(n) == oracle::factor(n));
  CHECK(euler_phi(5) == 4);
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(mobius(30) == -1);
  CHECK(mobius(12) == 0);
  CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
}

TEST_CASE("partial factorization keeps the cofactor") {
  const BigInt p("1000000000000000003"), q("1000000000000000009");
  FactorBudget tiny;
  tiny.rho_iterations = 10;
  const auto part = factorize_partial(BigInt(6) * p * q, tiny);
  CHECK(part.primes.at(2) == 1);
  CHECK(part.primes.at(3) == 1);
  CHECK(part.cofactor == p * q);
  CHECK_THROWS_AS(factorize(BigInt(6) * p * q, tiny), FactorizationIncomplete);
}

TEST_CASE("complex roots") {
  const auto r = complex_roots(IntPoly{-1, 1, 1}, 1e-12);
  REQUIRE(r.size() == 2);
  const double s5 = std::sqrt(5.0);
  CHECK(r[0].value.real() == doctest::Approx((-1 - s5) / 2).epsilon(1e-14));
  CHECK(r[1].value.real() == doctest::Approx((-1 + s5) / 2).epsilon(1e-14));
  CHECK(r[0].error <= 1e-12);
  const auto two = complex_roots(IntPoly{-2, 1}, 1e-12);
  CHECK(two[0].value == std::complex<double>(2.0, 0.0));
  const auto ii = complex_roots(IntPoly{1, 0, 1}, 1e-12);
  CHECK(std::abs(ii[0].value - std::complex<double>(0, -1)) < 1e-12);
  CHECK(std::abs(ii[1].value - std::complex<double>(0, 1)) < 1e-12);
  CHECK_THROWS_AS(complex_roots(IntPoly{1, 2, 1}, 1e-12), DomainError);
  CHECK_THROWS_AS(complex_roots(IntPoly{3}, 1e-12), DomainError);
}

TEST_CASE("continued fraction convergents") {
  auto third = cf_convergents(Rat(1, 3), BigInt(100));
  REQUIRE(third.items.size() == 2);
  CHECK(third.items[1].a == 1);
  CHECK(third.items[1].N == 3);
  // sqrt 2 - 1 = [0; 2, 2, ...], enclosed by two rationals.
  const auto s = cf_convergents(Rat(BigInt("414213562373095048"), BigInt("1000000000000000000")),
                                Rat(BigInt("414213562373095049"), BigInt("1000000000000000000")), BigInt(100));
  const std::vector<std::pair<long, long>> want{{0, 1}, {1, 2}, {2, 5}, {5, 12}, {12, 29}, {29, 70}};
  REQUIRE(s.items.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(s.items[i].a == want[i].first);
    CHECK(s.items[i].N == want[i].second);
  }
  // An interval too wide to decide the next quotient is flagged.
  const auto wide = cf_convergents(Rat(4, 10), Rat(5, 10), BigInt(1000));
  CHECK(wide.truncated);
}
