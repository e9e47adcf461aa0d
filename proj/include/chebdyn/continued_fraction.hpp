#pragma once

#include <vector>

#include "chebdyn/bigint.hpp"
#include "chebdyn/roots.hpp"

namespace chebdyn {

struct Convergent {
  BigInt a;  // numerator
  BigInt N;  // denominator, positive
};

struct ConvergentList {
  std::vector<Convergent> items;  // increasing N, lowest terms
  bool truncated = false;         // true when the input interval could not certify the next quotient
};

// Convergents of every real number in [lo, hi] with denominators <= nmax. A partial
// quotient is emitted only if it is the same for both endpoints.
ConvergentList cf_convergents(const Rat& lo, const Rat& hi, const BigInt& nmax);
ConvergentList cf_convergents(const ApproxReal& theta, const BigInt& nmax);
ConvergentList cf_convergents(const Rat& theta, const BigInt& nmax);

}  // namespace chebdyn
