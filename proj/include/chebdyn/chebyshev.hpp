#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chebdyn/algebraic.hpp"
#include "chebdyn/int_poly.hpp"
#include "chebdyn/roots.hpp"

namespace chebdyn {

// The dynamical system x -> T_d(x) with d >= 2.
class ChebMap {
 public:
  explicit ChebMap(int d);
  int degree() const { return d_; }
  Rat operator()(const Rat& x) const;

 private:
  int d_;
};

// T_n with T_0 = 2, T_1 = x, T_{k+1} = x T_k - T_{k-1}, so T_n(w + 1/w) = w^n + w^-n.
IntPoly cheb_poly(int n);

// Binary ladder: T_{2k} = T_k^2 - 2, T_{2k+1} = T_k T_{k+1} - x.
template <class T>
T cheb_ladder(std::uint64_t n, const T& x, const T& two) {
  if (n == 0) return two;
  T a = x, b = x * x - two;  // (T_k, T_{k+1}) with k = 1
  int top = 63;
  while (((n >> top) & 1) == 0) --top;
  for (int bit = top - 1; bit >= 0; --bit) {
    T mid = a * b - x;
    if ((n >> bit) & 1) {
      b = b * b - two;
      a = std::move(mid);
    } else {
      a = a * a - two;
      b = std::move(mid);
    }
  }
  return a;
}

Rat cheb_eval(std::uint64_t n, const Rat& z);
ApproxComplex cheb_eval(std::uint64_t n, const ApproxComplex& z);
// s^n T_n(r/s); coprime to s whenever gcd(r, s) = 1.
BigInt cheb_homogeneous(std::uint64_t n, const BigInt& r, const BigInt& s);

// Phi_N, the N-th cyclotomic polynomial.
IntPoly cyclotomic(std::uint64_t N);
// Coefficients c_0..c_m of Psi_N = c_0 + sum_{k>=1} c_k T_k (m = deg Psi_N).
std::vector<BigInt> psi_chebyshev_coeffs(std::uint64_t N);
// Psi_N, the minimal polynomial of 2cos(2 pi / N).
IntPoly psi(std::uint64_t N);
// Coefficients of Psi_N reduced into [0, M), for M < 2^32.
std::vector<std::uint64_t> psi_mod(std::uint64_t N, std::uint64_t M);

// 1 for N <= 2, else phi(N)/2.
std::uint64_t orbit_size(std::uint64_t N);
// The a in [1, N/2] with gcd(a, N) = 1 (a = 0 for N = 1), ascending.
std::vector<std::uint64_t> orbit_exponents(std::uint64_t N);

struct PreperiodicOrbit {
  std::uint64_t N = 1;
  IntPoly minpoly;
  std::uint64_t size = 1;
  std::vector<std::uint64_t> exponents;
  std::vector<ApproxReal> conjugates;  // 2cos(2 pi a / N) in exponent order
  AlgebraicNumber generator(int embedding = 0) const;
};

// The Galois orbit of 2cos(2 pi / N). The minimal polynomial is skipped when
// with_minpoly is false (large scans never need it).
PreperiodicOrbit preperiodic_orbit(std::uint64_t N, bool with_minpoly = true);
std::vector<ApproxReal> orbit_conjugates(std::uint64_t N);

// True exactly for x in {-2, -1, 0, 1, 2}.
bool is_preperiodic_rational(const Rat& x);
// The same decision by following the T_d orbit until it repeats, leaves [-2, 2],
// or its denominator grows.
bool is_preperiodic_dynamic(const Rat& x, int d = 2, int max_steps = 256);
// N such that the minimal polynomial of b equals Psi_N, if any.
std::optional<std::uint64_t> preperiodic_order(const IntPoly& minpoly);
bool is_preperiodic(const AlgebraicNumber& b);

// s^d Psi_N(r/s) for b = r/s, with d = deg Psi_N.
BigInt psi_at(std::uint64_t N, const Rat& b);
// Res(Psi_N, f) = lead(f)^d prod_j Psi_N(b_j) over the roots b_j of f.
BigInt psi_resultant(std::uint64_t N, const AlgebraicNumber& b);

}  // namespace chebdyn
