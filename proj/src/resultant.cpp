#include "chebdyn/resultant.hpp"

#include <utility>

namespace chebdyn {

namespace {

BigInt ipow(const BigInt& b, long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

BigInt divexact(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Classical (Sylvester) resultant via the subresultant algorithm.
BigInt subresultant(IntPoly a, IntPoly b) {
  if (a.degree() == 0 && b.degree() == 0) return 1;
  BigInt ca = a.content(), cb = b.content();
  if (a.lead() < 0) ca = -ca;
  if (b.lead() < 0) cb = -cb;
  a = a.primitive_part();
  b = b.primitive_part();
  BigInt t = ipow(ca, b.degree()) * ipow(cb, a.degree());
  int s = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -1;
  }
  if (b.degree() == 0) return s * t * ipow(b.lead(), a.degree());

  BigInt g = 1, h = 1;
  while (true) {
    const int delta = a.degree() - b.degree();
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -s;
    IntPoly r = a.pseudo_remainder(b);
    a = std::move(b);
    if (r.is_zero()) return 0;
    BigInt denom = g * ipow(h, delta);
    std::vector<BigInt> coeffs(r.coeffs().begin(), r.coeffs().end());
    for (auto& c : coeffs) c = divexact(c, denom);
    b = IntPoly(std::move(coeffs));
    g = a.lead();
    // h <- g^delta / h^(delta-1)
    if (delta != 0) h = divexact(ipow(g, delta), ipow(h, delta - 1));
    if (b.degree() == 0) break;
  }
  // h <- lead(b)^deg(a) / h^(deg(a)-1)
  BigInt last = divexact(ipow(b.lead(), a.degree()), ipow(h, a.degree() - 1));
  return s * t * last;
}

}  // namespace

BigInt sylvester_resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) throw DomainError("resultant of the zero polynomial");
  const int m = f.degree(), n = g.degree();
  const int size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<BigInt>> mat(static_cast<std::size_t>(size), std::vector<BigInt>(static_cast<std::size_t>(size), BigInt(0)));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= m; ++k) mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + k)] = f.coeff(m - k);
  }
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k <= n; ++k) mat[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + k)] = g.coeff(n - k);
  }
  // Fraction-free Bareiss elimination.
  int sign = 1;
  BigInt prev = 1;
  for (int k = 0; k < size - 1; ++k) {
    auto K = static_cast<std::size_t>(k);
    if (mat[K][K] == 0) {
      std::size_t piv = K + 1;
      while (piv < static_cast<std::size_t>(size) && mat[piv][K] == 0) ++piv;
      if (piv == static_cast<std::size_t>(size)) return 0;
      std::swap(mat[piv], mat[K]);
      sign = -sign;
    }
    for (std::size_t i = K + 1; i < static_cast<std::size_t>(size); ++i) {
      for (std::size_t j = K + 1; j < static_cast<std::size_t>(size); ++j) {
        BigInt v = mat[i][j] * mat[K][K] - mat[i][K] * mat[K][j];
        mat[i][j] = divexact(v, prev);
      }
      mat[i][K] = 0;
    }
    prev = mat[K][K];
  }
  return sign * mat[static_cast<std::size_t>(size - 1)][static_cast<std::size_t>(size - 1)];
}

BigInt resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) throw DomainError("resultant of the zero polynomial");
  BigInt r = subresultant(f, g);
  if ((f.degree() * g.degree()) % 2 == 1) r = -r;
  return r;
}

}  // namespace chebdyn
