#include <doctest.h>

#include "chebdyn/baker.hpp"
#include "chebdyn/heights.hpp"

using namespace chebdyn;

namespace {
const IntPoly kThreeFour{5, -6, 5};  // (3 +- 4i) / 5
double theta_oracle() { return std::atan2(4.0, 3.0) / (2 * std::numbers::pi); }
}  // namespace

TEST_CASE("two-logarithm lower bound") {
  const auto a = make_baker_instance(2, 0.5, 0.5, 1, 1);
  CHECK(a.B == doctest::Approx(2.0));
  CHECK(baker_lower_bound(a) == doctest::Approx(-8640000.0));
  const double h = 0.5 * std::log(5.0);
  const auto b = make_baker_instance(2, 0.5, h, 1, -7);
  CHECK(b.B == doctest::Approx(1 / (2 * h) + 7.0));
  CHECK(b.B == doctest::Approx(7.6214).epsilon(1e-4));
  CHECK(baker_lower_bound(b) == doctest::Approx(-21600.0 * 16 * 0.5 * h * 100));
  // Large B switches to log B.
  const auto c = make_baker_instance(1, 1, 1, BigInt("100000000000"), 1);
  CHECK(baker_lower_bound(c) == doctest::Approx(-21600.0 * std::pow(std::log(c.B), 2)));
  CHECK_THROWS_AS(make_baker_instance(2, 0.1, 0.5, 1, 1), DomainError);
}

TEST_CASE("unit circle points") {
  const auto pt = unit_circle_point(AlgebraicNumber::from_minpoly(kThreeFour, 1));
  CHECK(pt.degree == 2);
  CHECK(std::fabs(pt.theta - theta_oracle()) <= 1e-15);
  CHECK(pt.theta == doctest::Approx(0.1475836177));
  CHECK(pt.theta_lo <= pt.theta_hi);
  CHECK(pt.theta_hi - pt.theta_lo < Rat(1, 1000000000));
  CHECK(std::fabs(pt.height - 0.5 * std::log(5.0)) <= 1e-12);
  const auto conj = unit_circle_point(AlgebraicNumber::from_minpoly(kThreeFour, 0));
  CHECK(conj.theta == doctest::Approx(-theta_oracle()));
  CHECK_THROWS_AS(unit_circle_point(AlgebraicNumber::from_minpoly(IntPoly{1, 0, 1})), DomainError);
  CHECK_THROWS_AS(unit_circle_point(AlgebraicNumber::from_minpoly(IntPoly{1, 1, 1})), DomainError);
  CHECK_THROWS_AS(unit_circle_point(AlgebraicNumber::from_minpoly(IntPoly{1, -3, 1})), DomainError);
  CHECK_THROWS_AS(unit_circle_point(AlgebraicNumber::rational(Rat(1))), DomainError);
}

TEST_CASE("angle approximation gaps") {
  const auto pt = unit_circle_point(AlgebraicNumber::from_minpoly(kThreeFour, 1));
  const auto conv = angle_convergents(pt, BigInt(10000));
  bool has17 = false;
  for (const auto& c : conv) has17 = has17 || (c.a == 1 && c.N == 7);
  CHECK(has17);
  const double c_eps = explicit_c_epsilon(pt, 0.1);
  const auto g = corollary_gap(pt, 1, 7, 0.1, c_eps);
  CHECK(g.lhs == doctest::Approx(std::log(std::fabs(1.0 / 7 - theta_oracle()))));
  CHECK(g.lhs == doctest::Approx(-5.3546).epsilon(1e-4));
  CHECK(g.holds);
  CHECK(g.chain_holds);
  const auto far = corollary_gap(pt, 1, 2, 0.1, 1.0);
  CHECK(far.lhs == doctest::Approx(-1.0429).epsilon(1e-4));
  CHECK(far.holds);
  for (const auto& c : conv) {
    const auto gc = corollary_gap(pt, c.a, c.N, 0.1, c_eps);
    REQUIRE(gc.holds);
    REQUIRE(gc.chain_holds);
  }
  const double cal = calibrated_c_epsilon(pt, conv, 0.1);
  CHECK(cal < c_eps);
  CHECK(cal > 0.0);
}

TEST_CASE("instance used for a convergent") {
  const auto pt = unit_circle_point(AlgebraicNumber::from_minpoly(kThreeFour, 1));
  const auto inst = corollary_instance(pt, 1, 7);
  CHECK(inst.D1 == 2);
  CHECK(inst.logA1 == doctest::Approx(0.5));
  CHECK(inst.logA2 == doctest::Approx(std::max(0.5 * std::log(5.0), 2 * std::numbers::pi * theta_oracle() / 2)));
  CHECK(inst.b1 == 1);
  CHECK(inst.b2 == -7);
}

TEST_CASE("archimedean proximity bound fails for beta = 1/2") {
  // C_eps = 1, eps = 1/2: N = 24 puts 2cos(75 deg) = 0.5176 near 1/2.
  const auto rep = proximity_bound_check(AlgebraicNumber::rational(Rat(1, 2)), 100, 0.5, 1.0);
  std::vector<std::uint64_t> bad;
  for (const auto& r : rep.rows)
    if (r.violation) bad.push_back(r.N);
  CHECK(bad == std::vector<std::uint64_t>{24, 62});
  const auto& r24 = rep.rows[23];
  REQUIRE(r24.N == 24);
  CHECK(r24.proximity == doctest::Approx(-std::log(2 * std::cos(5 * std::numbers::pi / 12) - 0.5)));
  CHECK(r24.bound == doctest::Approx((std::log(2.0) + 1) * std::sqrt(4.0)));
  CHECK(rep.sandwich_failures == 0);
}

TEST_CASE("archimedean proximity bound outside [-2, 2]") {
  const auto rep = proximity_bound_check(AlgebraicNumber::rational(Rat(3)), 300, 0.5, 1.0);
  CHECK(rep.violations == 0);
  CHECK(rep.sandwich_failures == 0);
  for (const auto& r : rep.rows) REQUIRE(r.sandwich_checked);
}
