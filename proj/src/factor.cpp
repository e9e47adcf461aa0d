#include "chebdyn/factor.hpp"

#include <algorithm>
#include <numeric>

namespace chebdyn {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

bool fits_u64(const BigInt& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

u64 to_u64(const BigInt& n) {
  u64 lo = mpz_getlimbn(n.get_mpz_t(), 0);
  return n == 0 ? 0 : lo;
}

// Brent's variant of Pollard rho on 64-bit n (odd, composite).
u64 rho_u64(u64 n, u64 c, u64 max_iter) {
  u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
  const u64 m = 128;
  u64 r = 1, iter = 0;
  auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
  do {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    u64 k = 0;
    do {
      ys = y;
      for (u64 i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        q = mulmod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
      k += m;
      iter += m;
    } while (k < r && g == 1);
    r *= 2;
    if (iter > max_iter) return 0;
  } while (g == 1);
  if (g == n) {
    do {
      ys = f(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g == n ? 0 : g;
}

BigInt rho_big(const BigInt& n, unsigned long c, u64 max_iter) {
  BigInt y = 2, x = 2, g = 1, q = 1, ys = 2, t;
  const u64 m = 128;
  u64 r = 1, iter = 0;
  auto f = [&](BigInt& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  do {
    x = y;
    for (u64 i = 0; i < r; ++i) f(y);
    u64 k = 0;
    do {
      ys = y;
      for (u64 i = 0; i < std::min(m, r - k); ++i) {
        f(y);
        t = x - y;
        q = q * t;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
      iter += m;
    } while (k < r && g == 1);
    r *= 2;
    if (iter > max_iter) return 0;
  } while (g == 1);
  if (g == n) {
    do {
      f(ys);
      t = x - ys;
      mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? BigInt(0) : g;
}

// Finds a nontrivial factor of composite n (no small factors), or 0 on budget exhaustion.
BigInt split(const BigInt& n, u64 budget) {
  for (unsigned long c = 1; c <= 8; ++c) {
    if (fits_u64(n)) {
      u64 d = rho_u64(to_u64(n), c, budget);
      if (d) return BigInt(static_cast<unsigned long>(d));
    } else {
      BigInt d = rho_big(n, c, budget);
      if (d != 0) return d;
    }
  }
  return 0;
}

void factor_rec(const BigInt& n, const FactorBudget& budget, std::vector<BigInt>& primes, std::vector<BigInt>& stuck) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  BigInt d = split(n, budget.rho_iterations);
  if (d == 0) {
    stuck.push_back(n);
    return;
  }
  factor_rec(d, budget, primes, stuck);
  BigInt q;
  mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  factor_rec(q, budget, primes, stuck);
}

// floor(sqrt(m)), saturated at 2^64 - 1.
u64 isqrt_bound(const BigInt& m) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
  return fits_u64(r) ? to_u64(r) : ~u64{0};
}

}  // namespace

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialDivisionBound + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kTrialDivisionBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= kTrialDivisionBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic for all 64-bit n.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

PartialFactorization factorize_partial(const BigInt& n, const FactorBudget& budget) {
  if (n == 0) throw DomainError("factorization of zero");
  PartialFactorization out;
  BigInt m = abs(n);
  u64 root = isqrt_bound(m);
  for (std::uint32_t p : small_primes()) {
    if (m == 1) break;
    if (p > root) {
      out.primes[m] += 1;
      m = 1;
      break;
    }
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      BigInt pp(static_cast<unsigned long>(p));
      int e = static_cast<int>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t()));
      out.primes[pp] += e;
      root = isqrt_bound(m);
    }
  }
  if (m != 1) {
    std::vector<BigInt> primes, stuck;
    factor_rec(m, budget, primes, stuck);
    for (const auto& p : primes) out.primes[p] += 1;
    for (const auto& s : stuck) out.cofactor *= s;
  }
  return out;
}

std::vector<BigInt> factorize(const BigInt& n, const FactorBudget& budget) {
  PartialFactorization pf = factorize_partial(n, budget);
  if (!pf.complete()) throw FactorizationIncomplete(std::move(pf));
  std::vector<BigInt> out;
  for (const auto& [p, e] : pf.primes) {
    for (int i = 0; i < e; ++i) out.push_back(p);
  }
  return out;
}

BigInt find_prime_factor(const BigInt& n, const FactorBudget& budget) {
  BigInt m = abs(n);
  if (m <= 1) return 0;
  const u64 root = isqrt_bound(m);
  for (std::uint32_t p : small_primes()) {
    if (p > root) return m;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) return BigInt(static_cast<unsigned long>(p));
  }
  if (is_prime(m)) return m;
  std::vector<BigInt> primes, stuck;
  factor_rec(m, budget, primes, stuck);
  if (primes.empty()) return 0;
  return *std::min_element(primes.begin(), primes.end());
}

std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  if (n <= 1) return out;
  for (std::uint32_t p : small_primes()) {
    if (static_cast<u64>(p) * p > n) break;
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) {
    for (const BigInt& p : factorize(BigInt(static_cast<unsigned long>(n)))) {
      u64 v = to_u64(p);
      if (!out.empty() && out.back().first == v) {
        out.back().second += 1;
      } else {
        out.emplace_back(v, 1);
      }
    }
  }
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw DomainError("euler_phi(0)");
  u64 phi = n;
  for (auto [p, e] : factor_u64(n)) phi = phi / p * (p - 1);
  return phi;
}

int mobius(std::uint64_t n) {
  if (n == 0) throw DomainError("mobius(0)");
  int mu = 1;
  for (auto [p, e] : factor_u64(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0) throw DomainError("divisors(0)");
  std::vector<u64> out{1};
  for (auto [p, e] : factor_u64(n)) {
    std::size_t base = out.size();
    u64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace chebdyn
