#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "chebdyn/bigint.hpp"

namespace chebdyn {

// Polynomial with arbitrary-precision integer coefficients, lowest degree first.
// The stored coefficient vector never has a trailing zero; the zero polynomial
// has no coefficients and degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  // Divides out the content and makes the leading coefficient positive.
  static IntPoly primitive(std::vector<BigInt> coeffs);
  static IntPoly monomial(int degree, const BigInt& c = 1);
  // s*x - r, the primitive linear polynomial vanishing at r/s.
  static IntPoly linear_for(const Rat& root);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const BigInt> coeffs() const { return coeffs_; }
  // Coefficient of x^i; zero outside the stored range.
  BigInt coeff(int i) const;
  const BigInt& lead() const;
  bool is_monic() const { return !is_zero() && lead() == 1; }

  BigInt content() const;
  IntPoly primitive_part() const;
  IntPoly derivative() const;
  IntPoly operator-() const;

  Rat eval(const Rat& x) const;
  // s^deg * f(r/s): the homogenized evaluation.
  BigInt eval_homogeneous(const BigInt& r, const BigInt& s) const;
  double eval(double x) const;
  std::complex<double> eval(std::complex<double> z) const;

  // s^deg * f(beta - x) where beta = r/s in lowest terms. Its roots are beta - root_i(f).
  IntPoly reflected_shift(const Rat& beta) const;

  // Exact quotient in Z[x]; throws DomainError if the division leaves a remainder
  // or a non-integral quotient.
  IntPoly exact_div(const IntPoly& divisor) const;
  // lead(g)^(deg f - deg g + 1) * f mod g.
  IntPoly pseudo_remainder(const IntPoly& g) const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const BigInt& c, const IntPoly& a);
  friend bool operator==(const IntPoly& a, const IntPoly& b) = default;

  std::string to_string() const;
  std::vector<std::string> coeff_strings() const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

// Greatest common divisor over Q, returned primitive with positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);
bool is_squarefree(const IntPoly& f);

}  // namespace chebdyn
