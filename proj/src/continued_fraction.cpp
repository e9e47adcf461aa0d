#include "chebdyn/continued_fraction.hpp"

#include <cmath>

namespace chebdyn {

namespace {

BigInt floor_of(const Rat& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace

ConvergentList cf_convergents(const Rat& lo_in, const Rat& hi_in, const BigInt& nmax) {
  if (hi_in < lo_in) throw DomainError("empty interval for continued fraction");
  if (nmax < 1) throw DomainError("denominator bound must be positive");
  ConvergentList out;
  Rat lo = lo_in, hi = hi_in;
  // p1/q1 and p2/q2 are the two previous convergents, seeded with 1/0 and 0/1.
  BigInt p1 = 1, q1 = 0, p2 = 0, q2 = 1;
  while (true) {
    BigInt a = floor_of(lo);
    if (floor_of(hi) != a) {
      out.truncated = true;
      break;
    }
    BigInt p = a * p1 + p2;
    BigInt q = a * q1 + q2;
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
    if (q > nmax) break;
    out.items.push_back({p, q});
    Rat flo = lo - a, fhi = hi - a;
    if (fhi == 0) break;  // exact rational, expansion complete
    if (flo == 0) {
      // The interval straddles the terminating value: the next quotient is unbounded.
      out.truncated = true;
      break;
    }
    lo = 1 / fhi;
    hi = 1 / flo;
  }
  return out;
}

ConvergentList cf_convergents(const ApproxReal& theta, const BigInt& nmax) {
  if (!std::isfinite(theta.value) || !std::isfinite(theta.error) || theta.error < 0) {
    throw DomainError("continued fraction of a non-finite value");
  }
  Rat v(theta.value), e(theta.error);
  return cf_convergents(Rat(v - e), Rat(v + e), nmax);
}

ConvergentList cf_convergents(const Rat& theta, const BigInt& nmax) { return cf_convergents(theta, theta, nmax); }

}  // namespace chebdyn
