#pragma once
// Slow, independent reference computations. Nothing here calls into the library
// beyond the BigInt/Rat aliases.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "chebdyn/bigint.hpp"

namespace oracle {

using chebdyn::BigInt;
using chebdyn::Rat;

// Trial division.
inline std::vector<BigInt> factor(BigInt n) {
  std::vector<BigInt> out;
  if (n < 0) n = -n;
  for (BigInt d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      out.push_back(d);
      n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline long valuation(BigInt n, long p) {
  long v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// Bareiss fraction-free determinant of the Sylvester matrix (coefficients low to high).
inline BigInt sylvester(const std::vector<BigInt>& f, const std::vector<BigInt>& g) {
  const int m = static_cast<int>(f.size()) - 1, n = static_cast<int>(g.size()) - 1;
  const int sz = m + n;
  if (sz == 0) return 1;
  std::vector<std::vector<BigInt>> a(sz, std::vector<BigInt>(sz, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) a[i][i + j] = f[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) a[n + i][i + j] = g[n - j];
  BigInt prev = 1, sign = 1;
  for (int k = 0; k < sz - 1; ++k) {
    if (a[k][k] == 0) {
      int r = k + 1;
      while (r < sz && a[r][k] == 0) ++r;
      if (r == sz) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < sz; ++i)
      for (int j = k + 1; j < sz; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[sz - 1][sz - 1];
}

// prod_a (x - 2cos(2 pi a / N)) expanded in long double and rounded; fine for small N.
inline std::vector<long> psi_numeric(unsigned N) {
  std::vector<long double> c{1.0L};
  for (unsigned a = 0; a <= N / 2; ++a) {
    unsigned g = a, h = N;
    while (h) {
      const unsigned t = g % h;
      g = h;
      h = t;
    }
    if (g != 1) continue;
    const long double r = 2.0L * std::cos(2.0L * std::numbers::pi_v<long double> * a / N);
    std::vector<long double> nc(c.size() + 1, 0.0L);
    for (std::size_t i = 0; i < c.size(); ++i) {
      nc[i + 1] += c[i];
      nc[i] -= r * c[i];
    }
    c = nc;
  }
  std::vector<long> out;
  for (auto v : c) out.push_back(std::lround(static_cast<double>(v)));
  return out;
}

// T_n(x) by the three-term recurrence.
inline Rat cheb(unsigned n, const Rat& x) {
  if (n == 0) return 2;
  Rat a = 2, b = x;
  for (unsigned k = 1; k < n; ++k) {
    Rat c = x * b - a;
    a = b;
    b = c;
  }
  return b;
}

// Canonical height of real |b| > 2 for T_d: log|w| with w + 1/w = b, |w| > 1.
inline double escape_rate(double b) {
  const double w = (std::fabs(b) + std::sqrt(b * b - 4.0)) / 2.0;
  return std::log(w);
}

// Composite Simpson on a smooth integrand.
template <class F>
double simpson(F f, double a, double b, int n = 200000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// kappa = (2/pi) int_0^{pi/3} log(2 cos t) dt: log+|2cos t| over [0, pi] with the symmetry.
inline double kappa() {
  const double pi = std::numbers::pi;
  return 2.0 / pi * simpson([](double t) { return std::log(2.0 * std::cos(t)); }, 0.0, pi / 3.0);
}

}  // namespace oracle
