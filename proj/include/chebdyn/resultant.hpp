#pragma once

#include "chebdyn/int_poly.hpp"

namespace chebdyn {

// Res(f, g) = lead(g)^deg(f) * prod_j f(b_j) over the roots b_j of g.
//
// With this convention Res(f, x - r) = f(r) and Res(f, s*x - r) = s^deg(f) f(r/s),
// so meeting-prime computations read off directly. It differs from the Sylvester
// determinant by the factor (-1)^(deg f * deg g). Computed with the subresultant PRS.
// Throws DomainError if either argument is the zero polynomial.
BigInt resultant(const IntPoly& f, const IntPoly& g);

// Determinant of the Sylvester matrix of f and g (classical sign convention).
BigInt sylvester_resultant(const IntPoly& f, const IntPoly& g);

}  // namespace chebdyn
