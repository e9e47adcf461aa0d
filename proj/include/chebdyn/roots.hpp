#pragma once

#include <complex>
#include <vector>

#include "chebdyn/int_poly.hpp"
#include "chebdyn/mp_real.hpp"

namespace chebdyn {

// A double approximation with a rigorous bound on the distance to the exact value.
struct ApproxReal {
  double value = 0.0;
  double error = 0.0;
};

struct ApproxComplex {
  std::complex<double> value;
  double error = 0.0;
};

ApproxReal approx(const Rat& q);
ApproxComplex to_complex(const ApproxReal& x);

// Ball arithmetic: each result bound covers the input errors and the rounding of the op.
ApproxReal operator+(const ApproxReal& a, const ApproxReal& b);
ApproxReal operator-(const ApproxReal& a, const ApproxReal& b);
ApproxReal operator*(const ApproxReal& a, const ApproxReal& b);
ApproxComplex operator+(const ApproxComplex& a, const ApproxComplex& b);
ApproxComplex operator-(const ApproxComplex& a, const ApproxComplex& b);
ApproxComplex operator*(const ApproxComplex& a, const ApproxComplex& b);

// Ceiling for precision escalation: CHEB_PRECISION_BITS, default 256, at least 64.
long default_precision_ceiling();

struct MpComplex {
  MpReal re;
  MpReal im;
};

// A root enclosed by the disk of the given radius around (re, im).
struct MpRoot {
  MpComplex center;
  MpReal radius;
};

// Certified roots at a fixed working precision, ordered by real then imaginary part.
// Throws ConvergenceError when the disks cannot be separated at `bits`.
std::vector<MpRoot> complex_roots_mp(const IntPoly& f, long bits);

// One ball per root of the squarefree f, each with error <= precision. Starts in
// 64-bit arithmetic and doubles the precision up to max_bits. Real roots have an
// imaginary part of exactly zero. Throws DomainError for constant, zero or
// non-squarefree f, and ConvergenceError (carrying the best bound) on failure.
std::vector<ApproxComplex> complex_roots(const IntPoly& f, double precision,
                                         long max_bits = default_precision_ceiling());

}  // namespace chebdyn
