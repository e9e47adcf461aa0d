#pragma once

#include <cstdint>
#include <vector>

#include "chebdyn/algebraic.hpp"
#include "chebdyn/continued_fraction.hpp"

namespace chebdyn {

// Two-logarithm linear form b1 log a1 + b2 log a2 over a field of degree D1.
struct BakerInstance {
  int D1 = 1;
  double logA1 = 1.0;
  double logA2 = 1.0;
  BigInt b1 = 1;
  BigInt b2 = 1;
  double B = 0.0;  // |b1| / (D1 logA2) + |b2| / (D1 logA1)
};

// Validates logA_j >= 1/D1 and fills in B.
BakerInstance make_baker_instance(int D1, double logA1, double logA2, const BigInt& b1, const BigInt& b2);
// -21600 D1^4 logA1 logA2 max(10, log B)^2.
double baker_lower_bound(const BakerInstance& inst);

// A point of the unit circle that is not a root of unity, with its angle
// theta0 = arg(beta) / 2pi in (-1/2, 1/2] to high precision.
struct UnitCirclePoint {
  AlgebraicNumber beta;
  int degree = 1;
  double height = 0.0;  // Weil height
  Rat theta_lo;         // certified enclosure of theta0
  Rat theta_hi;
  double theta = 0.0;
};

UnitCirclePoint unit_circle_point(const AlgebraicNumber& beta, long bits = 256);

struct CorollaryGap {
  BigInt a;
  BigInt N;
  double lhs = 0.0;  // log|a/N - theta0|
  double lhs_error = 0.0;
  double rhs = 0.0;  // -C_eps D^3 h(beta) N^eps
  bool equal = false;
  bool holds = false;  // no certified violation of lhs >= rhs
  // The chain behind the bound: |a/N - theta0| = |a log 1 - N log beta| / (2 pi |N|)
  // with log 1 = 2 pi i, and the two-logarithm bound applied to the numerator.
  double log_linear_form = 0.0;
  double baker_bound = 0.0;
  bool chain_holds = false;
};

CorollaryGap corollary_gap(const UnitCirclePoint& pt, const BigInt& a, const BigInt& N, double eps, double c_eps);

// The instance used for (a, N): alpha1 = 1 with logA1 = 1/D, alpha2 = beta with
// logA2 = max(h(beta), |log beta| / D, 1/D).
BakerInstance corollary_instance(const UnitCirclePoint& pt, const BigInt& a, const BigInt& N);

// Smallest C with 2 pi |N| exp(baker bound) >= exp(-C D^3 h N^eps) for every N >= 2,
// taking |a| <= |N|; the supremum over N is located on a fine grid in log N.
double explicit_c_epsilon(const UnitCirclePoint& pt, double eps);
// Smallest C for which no listed convergent violates the inequality.
double calibrated_c_epsilon(const UnitCirclePoint& pt, const std::vector<Convergent>& conv, double eps);

// Convergents a/N of theta0 with 2 <= N <= n_max.
std::vector<Convergent> angle_convergents(const UnitCirclePoint& pt, const BigInt& n_max);

struct ProximityRow {
  std::uint64_t N = 0;
  std::uint64_t size = 0;
  double proximity = 0.0;  // max over the orbit of -log|x - beta|
  double error = 0.0;
  double bound = 0.0;      // C_eps D^3 (h(beta) + 1) |P|^eps
  bool violation = false;
  bool sandwich_checked = false;  // |beta| > 2: |beta| - 2 <= |x - beta| <= |beta| + 2
  bool sandwich_ok = true;
};

struct ProximityReport {
  std::vector<ProximityRow> rows;
  std::uint64_t violations = 0;
  std::uint64_t sandwich_failures = 0;
};

ProximityReport proximity_bound_check(const AlgebraicNumber& beta, std::uint64_t n_max, double eps, double c_eps);

}  // namespace chebdyn
