#pragma once

#include <string>

#include "chebdyn/algebraic.hpp"
#include "chebdyn/chebyshev.hpp"

namespace chebdyn {

enum class HeightMethod { ExactRational, MahlerNumeric, IterationLimit };
std::string to_string(HeightMethod m);

struct HeightValue {
  double value = 0.0;
  double error = 0.0;
  HeightMethod method = HeightMethod::ExactRational;
};

inline constexpr double kDefaultDobrowolskiC = 0.25;
// Bit length at which exact iteration hands over to interval tracking of log|x|.
inline constexpr std::size_t kExactIterationBits = 4096;

HeightValue weil_height(const Rat& x);
// (1/D)(log|lead| + sum log+|b_j|); the error collects the root ball radii.
HeightValue weil_height(const AlgebraicNumber& b);
// Validates irreducibility first; throws DomainError for reducible f.
HeightValue weil_height(const IntPoly& minpoly);

// lim h(phi^n(x)) / d^n. Rational input: h(x_n)/d^n with x_n iterated exactly, refined
// by the tail bounds for |G(y) - log+|y|| (0 on [-2, 2], 2/(|y|-1)^2 for |y| >= 3,
// log 2 otherwise). Throws ConvergenceError (with the best estimate) if tol is not met.
HeightValue canonical_height(const Rat& x, const ChebMap& map, double tol);
// Sum over conjugates of the iterated archimedean escape rate plus log|lead|, over D.
HeightValue canonical_height(const AlgebraicNumber& b, const ChebMap& map, double tol);

// C / (D (log D)^3); D >= 2.
double dobrowolski_floor(int D, double C = kDefaultDobrowolskiC);

}  // namespace chebdyn
