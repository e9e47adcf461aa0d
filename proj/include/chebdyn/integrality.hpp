#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "chebdyn/algebraic.hpp"
#include "chebdyn/chebyshev.hpp"
#include "chebdyn/factor.hpp"
#include "chebdyn/places.hpp"

namespace chebdyn {

// v_p(q), +inf for q = 0. Throws DomainError for non-prime p.
Valuation padic_valuation(const Rat& q, const BigInt& p);
// v_p(n) for n != 0 without primality checks; p >= 2.
long valuation_unchecked(const BigInt& n, unsigned long p);

// (x1 : x2) with coprime integers, not both zero; (1 : 0) is infinity.
struct ProjectivePoint {
  BigInt x1 = 0;
  BigInt x2 = 1;
  static ProjectivePoint from(const Rat& q) { return {q.get_num(), q.get_den()}; }
  static ProjectivePoint infinity() { return {1, 0}; }
};

// |x1 y2 - y1 x2|_v / (max(|x1|_v, |x2|_v) max(|y1|_v, |y2|_v)), plain absolute values.
double chordal_distance(const ProjectivePoint& x, const ProjectivePoint& y, const Place& v);
double chordal_distance(const Rat& x, const Rat& y, const Place& v);
// Archimedean chordal distance of two affine complex points (max-norm form).
double chordal_distance(std::complex<double> x, std::complex<double> y);

// -log of the chordal distance, computed in log space. Throws DomainError when x = y.
double lambda(const ProjectivePoint& x, const ProjectivePoint& y, const Place& v);
double lambda(const Rat& x, const Rat& y, const Place& v);
// log max(1,|x|) + log max(1,|y|) - log|x - y| with a rigorous error bound.
ApproxReal lambda_archimedean(const ApproxComplex& x, const ApproxComplex& y);

struct MeetingPrimes {
  std::map<BigInt, long> primes;  // p -> v_p(Res(Psi_N, f_b)), the summed meeting valuation
  BigInt unfactored = 1;          // cofactor left by an exhausted factoring budget
  BigInt resultant = 0;
};

// Primes where some conjugate of b meets some point of the orbit of 2cos(2 pi / N):
// the prime support of Res(Psi_N, f_b), which for b = r/s is s^d Psi_N(r/s).
// Throws DomainError when b is itself a point of the orbit.
MeetingPrimes meeting_primes(std::uint64_t N, const Rat& b, const FactorBudget& budget = {});
MeetingPrimes meeting_primes(std::uint64_t N, const AlgebraicNumber& b, const FactorBudget& budget = {});

struct SIntegralityReport {
  std::uint64_t orbit_n = 0;
  std::string beta;
  MeetingPrimes meeting;
  bool is_s_integral = false;
  std::optional<BigInt> witness;  // smallest meeting prime outside S, when one was found
};

// Exact verdict: strips every prime of S from the resultant and tests for a unit.
SIntegralityReport is_s_integral(std::uint64_t N, const Rat& b, const PlaceSet& S, const FactorBudget& budget = {});
SIntegralityReport is_s_integral(std::uint64_t N, const AlgebraicNumber& b, const PlaceSet& S,
                                 const FactorBudget& budget = {});
// Verdict only, without factoring anything.
bool s_integral_verdict(const BigInt& resultant, const PlaceSet& S);

// Root valuations of g over Q_p-bar from the lower convex hull of (i, v_p(g_i)),
// ascending, with multiplicity; roots at zero get +inf.
std::vector<Valuation> newton_polygon_valuations(const IntPoly& g, const BigInt& p);
// Same computation on coefficients reduced mod p^K (M = p^K < 2^32, coefficients given
// in [0, M)). nullopt when a truncated coefficient is a vertex of the hull.
std::optional<std::vector<Rat>> newton_polygon_valuations_mod(const std::vector<std::uint64_t>& g, std::uint64_t p,
                                                              int K);
// s^d Psi(b - x) mod M from Psi mod M, for b = r/s.
std::vector<std::uint64_t> reflected_shift_mod(const std::vector<std::uint64_t>& psi_coeffs, const Rat& b,
                                               std::uint64_t M);

// v_p(1 - zeta_m): +inf for m = 1, 1/((p-1)p^(n-1)) for m = p^n, else 0.
Valuation root_of_unity_valuation(std::uint64_t m, const BigInt& p);

struct NearPointOrbit {
  std::uint64_t N = 0;
  Rat max_valuation;        // largest v_p(b - a) over the orbit
  std::uint64_t flagged = 0;  // points with v_p(b - a) >= 1/(p-1)
  std::uint64_t flagged_strict = 0;  // points with v_p(b - a) > 2/(p-1)
};

struct NearPointReport {
  Rat beta;
  BigInt p;
  std::uint64_t n_max = 0;
  std::vector<NearPointOrbit> flagged_orbits;  // orbits with at least one flagged point
  std::uint64_t flagged_points = 0;
  std::uint64_t flagged_points_strict = 0;
  bool holds() const { return flagged_points <= 1; }
  // At most one point can sit at valuation > 2/(p-1): two orbit points differ by
  // (xi - eta)(1 - 1/(xi eta)), each factor of valuation <= 1/(p-1).
  bool holds_strict() const { return flagged_points_strict <= 1; }
};

// Scans N <= n_max for orbit points p-adically close to the non-preperiodic b.
NearPointReport near_point_check(const Rat& b, const BigInt& p, std::uint64_t n_max);

struct Proximity {
  double value = 0.0;  // max over conjugates of -log|a - b|
  double error = 0.0;
  std::uint64_t exponent = 0;  // a of the nearest conjugate 2cos(2 pi a / N)
};

// Escalates precision up to max_bits when b is within numeric error of a conjugate.
Proximity arch_proximity(std::uint64_t N, const Rat& b, long max_bits = default_precision_ceiling());
Proximity arch_proximity(std::uint64_t N, const AlgebraicNumber& b, long max_bits = default_precision_ceiling());
// No escalation: throws ConvergenceError if b's ball meets a conjugate's.
Proximity arch_proximity(std::uint64_t N, const ApproxComplex& b);

}  // namespace chebdyn
