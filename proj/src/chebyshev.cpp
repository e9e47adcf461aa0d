#include "chebdyn/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chebdyn/factor.hpp"
#include "chebdyn/mp_real.hpp"
#include "chebdyn/resultant.hpp"

namespace chebdyn {

namespace {

BigInt ipow(const BigInt& b, std::uint64_t e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

BigInt exact_sqrt(const BigInt& n, const char* what) {
  if (n < 0 || mpz_perfect_square_p(n.get_mpz_t()) == 0) throw std::logic_error(what);
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Phi_N(z) mod z^len as a power series: prod_{k | N} (1 - z^k)^mu(N/k), N >= 2.
std::vector<BigInt> cyclotomic_series(std::uint64_t N, std::size_t len) {
  std::vector<BigInt> a(len, BigInt(0));
  a[0] = 1;
  const auto divs = divisors(N);
  for (int pass = 0; pass < 2; ++pass) {
    for (std::uint64_t k : divs) {
      const int mu = mobius(N / k);
      if (k >= len) continue;
      if (pass == 0 && mu == 1) {
        for (std::size_t i = len - 1; i >= k; --i) a[i] -= a[i - k];
      } else if (pass == 1 && mu == -1) {
        for (std::size_t i = k; i < len; ++i) a[i] += a[i - k];
      }
    }
  }
  return a;
}

// Number of a in [1, x] coprime to N.
std::uint64_t coprime_count(std::uint64_t N, std::uint64_t x) {
  std::int64_t total = 0;
  for (std::uint64_t e : divisors(N)) {
    const int mu = mobius(e);
    if (mu != 0) total += mu * static_cast<std::int64_t>(x / e);
  }
  return static_cast<std::uint64_t>(total);
}

// #{a in [1, N/2], gcd(a, N) = 1 : 2cos(2 pi a / N) > b} for a real b inside (-2, 2)
// given as a ball (center, radius) that contains no conjugate. Returns nullopt if the
// ball is too wide to decide.
std::optional<std::uint64_t> conjugates_above(std::uint64_t N, const MpReal& center, const MpReal& radius) {
  const mpfr_prec_t prec = center.prec();
  // 2cos(2 pi a/N) > b  <=>  a < N acos(b/2) / (2 pi); acos is decreasing.
  auto angle_index = [&](const MpReal& b) {
    MpReal half = b;
    mpfr_div_2ui(half.get(), half.get(), 1, MPFR_RNDN);
    MpReal t(prec);
    mpfr_acos(t.get(), half.get(), MPFR_RNDN);
    t /= mp_pi(prec);
    mpfr_mul_ui(t.get(), t.get(), static_cast<unsigned long>(N), MPFR_RNDN);
    mpfr_div_2ui(t.get(), t.get(), 1, MPFR_RNDN);
    return t;
  };
  MpReal lo = center - radius, hi = center + radius;
  MpReal two(2.0, prec);
  if (lo > two || lo == two) return 0;
  if (hi < -two || hi == -two) return orbit_size(N);
  if (lo < -two || hi > two) return std::nullopt;
  MpReal x_hi = angle_index(lo), x_lo = angle_index(hi);
  // Guard band for the rounding in acos, the division and the product.
  MpReal slack(1.0, prec);
  mpfr_mul_2si(slack.get(), slack.get(), -static_cast<long>(prec) + 8 + static_cast<long>(std::log2(N + 1.0)), MPFR_RNDN);
  x_hi += slack;
  x_lo -= slack;
  MpReal f_lo(prec), f_hi(prec);
  mpfr_floor(f_lo.get(), x_lo.get());
  mpfr_floor(f_hi.get(), x_hi.get());
  if (f_lo != f_hi) return std::nullopt;
  const auto x = static_cast<std::uint64_t>(std::max(0.0, f_lo.to_double()));
  return coprime_count(N, std::min<std::uint64_t>(x, N / 2));
}

// Elements of Q[y]/(f) as coefficient vectors of length deg f.
class QuotientRing {
 public:
  explicit QuotientRing(const IntPoly& f) : f_(f), n_(static_cast<std::size_t>(f.degree())) {
    // reduce[j] = y^(n + j) expressed in the basis 1, y, ..., y^(n-1).
    std::vector<Rat> cur(n_);
    for (std::size_t i = 0; i < n_; ++i) cur[i] = make_rat(-f.coeff(static_cast<int>(i)), f.lead());
    for (std::size_t j = 0; j + 1 < n_; ++j) {
      reduce_.push_back(cur);
      std::vector<Rat> next(n_);
      for (std::size_t i = 1; i < n_; ++i) next[i] = cur[i - 1];
      for (std::size_t i = 0; i < n_; ++i) next[i] += cur[n_ - 1] * reduce_[0][i];
      cur = std::move(next);
    }
    if (n_ >= 1 && reduce_.empty()) reduce_.push_back(cur);
  }

  std::vector<Rat> generator() const {
    std::vector<Rat> g(n_);
    if (n_ == 1) {
      g[0] = reduce_[0][0];
    } else {
      g[1] = 1;
    }
    return g;
  }

  std::vector<Rat> constant(const Rat& c) const {
    std::vector<Rat> g(n_);
    g[0] = c;
    return g;
  }

  std::vector<Rat> mul(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
    std::vector<Rat> full(2 * n_ - 1);
    for (std::size_t i = 0; i < n_; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) full[i + j] += a[i] * b[j];
    }
    std::vector<Rat> out(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(n_));
    for (std::size_t j = n_; j < full.size(); ++j) {
      if (full[j] == 0) continue;
      for (std::size_t i = 0; i < n_; ++i) out[i] += full[j] * reduce_[j - n_][i];
    }
    return out;
  }

  static std::vector<Rat> sub(std::vector<Rat> a, const std::vector<Rat>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
  }

  // Norm of the element: Res(G, f) / (lead(f)^deg G * L^n) with G = L * g integral.
  Rat norm(const std::vector<Rat>& g) const {
    BigInt L = 1;
    for (const auto& c : g) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den_mpz_t());
    std::vector<BigInt> coeffs;
    for (const auto& c : g) {
      Rat scaled = c * L;
      coeffs.push_back(scaled.get_num());
    }
    IntPoly G(std::move(coeffs));
    if (G.is_zero()) return 0;
    Rat n = norm_at_root(G, f_);
    return n / Rat(ipow(L, n_));
  }

 private:
  IntPoly f_;
  std::size_t n_;
  std::vector<std::vector<Rat>> reduce_;
};

// T_k(b) - 2 in Q[y]/(f) by the binary ladder.
std::vector<Rat> cheb_minus_two(const QuotientRing& ring, std::uint64_t k) {
  const auto x = ring.generator();
  const auto two = ring.constant(2);
  std::vector<Rat> a = x, b = QuotientRing::sub(ring.mul(x, x), two);
  int top = 63;
  while (((k >> top) & 1) == 0) --top;
  for (int bit = top - 1; bit >= 0; --bit) {
    auto mid = QuotientRing::sub(ring.mul(a, b), x);
    if ((k >> bit) & 1) {
      b = QuotientRing::sub(ring.mul(b, b), two);
      a = std::move(mid);
    } else {
      a = QuotientRing::sub(ring.mul(a, a), two);
      b = std::move(mid);
    }
  }
  return QuotientRing::sub(std::move(a), two);
}

}  // namespace

ChebMap::ChebMap(int d) : d_(d) {
  if (d < 2) throw DomainError("Chebyshev map degree must be at least 2");
}

Rat ChebMap::operator()(const Rat& x) const { return cheb_eval(static_cast<std::uint64_t>(d_), x); }

IntPoly cheb_poly(int n) {
  if (n < 0) throw DomainError("Chebyshev index must be nonnegative");
  IntPoly prev{2}, cur{0, 1};
  if (n == 0) return prev;
  const IntPoly x{0, 1};
  for (int k = 1; k < n; ++k) {
    IntPoly next = x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Rat cheb_eval(std::uint64_t n, const Rat& z) {
  if (n == 0) return 2;
  BigInt num = cheb_homogeneous(n, z.get_num(), z.get_den());
  return make_rat(num, ipow(z.get_den(), n));
}

ApproxComplex cheb_eval(std::uint64_t n, const ApproxComplex& z) {
  return cheb_ladder<ApproxComplex>(n, z, ApproxComplex{{2.0, 0.0}, 0.0});
}

BigInt cheb_homogeneous(std::uint64_t n, const BigInt& r, const BigInt& s) {
  if (n == 0) return 2;
  BigInt a = r, b = r * r - 2 * s * s, sk = s;  // U_k, U_{k+1}, s^k with k = 1
  int top = 63;
  while (((n >> top) & 1) == 0) --top;
  for (int bit = top - 1; bit >= 0; --bit) {
    BigInt s2k = sk * sk;
    BigInt mid = a * b - r * s2k;
    if ((n >> bit) & 1) {
      BigInt s2k2 = s2k * s * s;
      b = b * b - 2 * s2k2;
      a = std::move(mid);
      sk = s2k * s;
    } else {
      a = a * a - 2 * s2k;
      b = std::move(mid);
      sk = std::move(s2k);
    }
  }
  return a;
}

IntPoly cyclotomic(std::uint64_t N) {
  if (N == 0) throw DomainError("cyclotomic index must be positive");
  if (N == 1) return IntPoly{-1, 1};
  return IntPoly(cyclotomic_series(N, euler_phi(N) + 1));
}

std::vector<BigInt> psi_chebyshev_coeffs(std::uint64_t N) {
  if (N == 0) throw DomainError("orbit index must be positive");
  if (N == 1) return {BigInt(-2), BigInt(1)};
  if (N == 2) return {BigInt(2), BigInt(1)};
  const std::uint64_t m = euler_phi(N) / 2;
  // z^-m Phi_N(z) = a_m + sum_k a_{m-k} (z^k + z^-k) by palindromy.
  auto a = cyclotomic_series(N, m + 1);
  std::vector<BigInt> c(m + 1);
  for (std::uint64_t k = 0; k <= m; ++k) c[k] = a[m - k];
  return c;
}

IntPoly psi(std::uint64_t N) {
  const auto c = psi_chebyshev_coeffs(N);
  const std::size_t m = c.size() - 1;
  // Clenshaw: B_k = c_k + x B_{k+1} - B_{k+2}; sum = c_0 + x B_1 - 2 B_2.
  std::vector<BigInt> b1, b2;
  for (std::size_t k = m; k >= 1; --k) {
    // Overwrite B_{k+2} with B_k in place: B_k[i] = B_{k+1}[i-1] - B_{k+2}[i].
    b2.resize(b1.size() + 1);
    mpz_neg(b2[0].get_mpz_t(), b2[0].get_mpz_t());
    for (std::size_t i = 1; i < b2.size(); ++i) mpz_sub(b2[i].get_mpz_t(), b1[i - 1].get_mpz_t(), b2[i].get_mpz_t());
    b2[0] += c[k];
    std::swap(b1, b2);
  }
  std::vector<BigInt> out(b1.size() + 1, BigInt(0));
  for (std::size_t i = 0; i < b1.size(); ++i) out[i + 1] = b1[i];
  for (std::size_t i = 0; i < b2.size(); ++i) out[i] -= 2 * b2[i];
  out[0] += c[0];
  return IntPoly(std::move(out));
}

std::vector<std::uint64_t> psi_mod(std::uint64_t N, std::uint64_t M) {
  if (M < 2 || M >= (std::uint64_t{1} << 32)) throw DomainError("modulus must lie in [2, 2^32)");
  const auto cbig = psi_chebyshev_coeffs(N);
  std::vector<std::uint64_t> c;
  for (const auto& v : cbig) c.push_back(mpz_fdiv_ui(v.get_mpz_t(), M));
  const std::size_t m = c.size() - 1;
  std::vector<std::uint64_t> b1, b2;
  b1.reserve(m + 1);
  b2.reserve(m + 1);
  for (std::size_t k = m; k >= 1; --k) {
    // b_k = c_k + x b_{k+1} - b_{k+2}, built in the storage of b_{k+2}.
    b2.resize(b1.size() + 1, 0);
    b2[0] = b2[0] == 0 ? 0 : M - b2[0];
    for (std::size_t i = 1; i < b2.size(); ++i) {
      const std::uint64_t t = b1[i - 1] + (M - b2[i]);
      b2[i] = t >= M ? t - M : t;
    }
    b2[0] = (b2[0] + c[k]) % M;
    std::swap(b1, b2);
  }
  std::vector<std::uint64_t> out(b1.size() + 1, 0);
  for (std::size_t i = 0; i < b1.size(); ++i) out[i + 1] = b1[i];
  for (std::size_t i = 0; i < b2.size(); ++i) out[i] = (out[i] + 2 * (M - b2[i])) % M;
  out[0] = (out[0] + c[0]) % M;
  return out;
}

std::uint64_t orbit_size(std::uint64_t N) {
  if (N == 0) throw DomainError("orbit index must be positive");
  return N <= 2 ? 1 : euler_phi(N) / 2;
}

std::vector<std::uint64_t> orbit_exponents(std::uint64_t N) {
  if (N == 0) throw DomainError("orbit index must be positive");
  if (N == 1) return {0};
  std::vector<std::uint64_t> out;
  for (std::uint64_t a = 1; 2 * a <= N; ++a) {
    if (std::gcd(a, N) == 1) out.push_back(a);
  }
  return out;
}

std::vector<ApproxReal> orbit_conjugates(std::uint64_t N) {
  std::vector<ApproxReal> out;
  for (std::uint64_t a : orbit_exponents(N)) {
    // Rational values are exact; the rest use libm cos (< 1 ulp) on a 3-op argument.
    if (N == 1 || N == 2 || N == 3 || N == 4 || N == 6) {
      const double v = N == 1 ? 2.0 : N == 2 ? -2.0 : N == 3 ? -1.0 : N == 4 ? 0.0 : 1.0;
      out.push_back({v, 0.0});
      continue;
    }
    const double arg = 2.0 * M_PI * static_cast<double>(a) / static_cast<double>(N);
    const double v = 2.0 * std::cos(arg);
    out.push_back({v, 2.0 * (arg * 5.0 * 0x1p-53 + 0x1p-52)});
  }
  return out;
}

AlgebraicNumber PreperiodicOrbit::generator(int embedding) const {
  std::vector<ApproxComplex> c;
  for (const auto& x : conjugates) c.push_back(to_complex(x));
  if (minpoly.is_zero()) throw DomainError("orbit was built without its minimal polynomial");
  // Root order of complex_roots is ascending; exponent order is descending in value.
  std::reverse(c.begin(), c.end());
  const int index = static_cast<int>(c.size()) - 1 - embedding;
  return AlgebraicNumber::trusted(minpoly, std::move(c), index, N);
}

PreperiodicOrbit preperiodic_orbit(std::uint64_t N, bool with_minpoly) {
  PreperiodicOrbit o;
  o.N = N;
  o.size = orbit_size(N);
  o.exponents = orbit_exponents(N);
  o.conjugates = orbit_conjugates(N);
  if (with_minpoly) o.minpoly = psi(N);
  return o;
}

bool is_preperiodic_rational(const Rat& x) { return x.get_den() == 1 && x >= -2 && x <= 2; }

bool is_preperiodic_dynamic(const Rat& x, int d, int max_steps) {
  ChebMap phi(d);
  std::vector<Rat> seen{x};
  Rat cur = x;
  for (int step = 0; step < max_steps; ++step) {
    if (cur > 2 || cur < -2) return false;  // |T_d(y)| > |y| once |y| > 2
    const BigInt den = cur.get_den();
    cur = phi(cur);
    if (cur.get_den() > den) return false;  // denominators grow to den^d forever
    for (const auto& s : seen) {
      if (s == cur) return true;
    }
    seen.push_back(cur);
  }
  throw ConvergenceError("orbit neither repeated nor escaped", 0.0, 0.0);
}

std::optional<std::uint64_t> preperiodic_order(const IntPoly& minpoly) {
  const IntPoly f = minpoly.primitive_part();
  if (!f.is_monic()) return std::nullopt;
  const int D = f.degree();
  if (D == 1) {
    const BigInt c = -f.coeff(0);
    if (c == 2) return 1;
    if (c == -2) return 2;
    if (c == -1) return 3;
    if (c == 0) return 4;
    if (c == 1) return 6;
    return std::nullopt;
  }
  // phi(N) >= sqrt(N / 2) bounds the search.
  const std::uint64_t target = 2 * static_cast<std::uint64_t>(D);
  const std::uint64_t bound = 2 * target * target;
  for (std::uint64_t N = 3; N <= bound; ++N) {
    if (euler_phi(N) != target) continue;
    const auto c = psi_chebyshev_coeffs(N);
    // Coefficient of x^(D-1) in Psi_N equals c_{D-1} (T_D contributes no x^(D-1) term).
    if (c[static_cast<std::size_t>(D - 1)] != f.coeff(D - 1)) continue;
    if (psi(N) == f) return N;
  }
  return std::nullopt;
}

bool is_preperiodic(const AlgebraicNumber& b) {
  if (b.known_order()) return true;
  if (b.is_rational()) return is_preperiodic_rational(b.as_rational());
  for (const auto& z : b.conjugates()) {
    // Any conjugate provably off [-2, 2] rules the number out.
    if (std::fabs(z.value.imag()) > z.error || std::fabs(z.value.real()) > 2.0 + z.error) return false;
  }
  return preperiodic_order(b.minpoly()).has_value();
}

BigInt psi_at(std::uint64_t N, const Rat& b) {
  const BigInt& r = b.get_num();
  const BigInt& s = b.get_den();
  if (N == 0) throw DomainError("orbit index must be positive");
  if (N == 1) return r - 2 * s;
  if (N == 2) return r + 2 * s;
  if (is_preperiodic_rational(b)) return psi(N).eval_homogeneous(r, s);
  // F^2 = prod_{k | N} (s^k T_k(r/s) - 2 s^k)^mu(N/k).
  BigInt num = 1, den = 1;
  for (std::uint64_t k : divisors(N)) {
    const int mu = mobius(N / k);
    if (mu == 0) continue;
    BigInt h = cheb_homogeneous(k, r, s) - 2 * ipow(s, k);
    (mu == 1 ? num : den) *= h;
  }
  BigInt sq;
  mpz_divexact(sq.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  BigInt F = exact_sqrt(sq, "product formula did not give a square");
  // Psi_N is monic, so its sign at b is (-1)^(number of roots above b).
  std::uint64_t above = 0;
  if (b >= 2) {
    above = 0;
  } else if (b <= -2) {
    above = orbit_size(N);
  } else {
    std::optional<std::uint64_t> count;
    for (mpfr_prec_t prec = 128; !count; prec *= 2) {
      if (prec > 1 << 16) throw ConvergenceError("could not separate b from the orbit", 0.0, 0.0);
      count = conjugates_above(N, MpReal(b, prec), MpReal(prec));
    }
    above = *count;
  }
  return above % 2 == 0 ? F : BigInt(-F);
}

BigInt psi_resultant(std::uint64_t N, const AlgebraicNumber& b) {
  if (b.is_rational()) return psi_at(N, b.as_rational());
  const IntPoly& f = b.minpoly();
  if (N <= 2 || is_preperiodic(b)) return resultant(psi(N), f);
  const QuotientRing ring(f);
  Rat sq = Rat(ipow(f.lead(), euler_phi(N)));
  for (std::uint64_t k : divisors(N)) {
    const int mu = mobius(N / k);
    if (mu == 0) continue;
    Rat nk = ring.norm(cheb_minus_two(ring, k));
    if (mu == 1) {
      sq *= nk;
    } else {
      sq /= nk;
    }
  }
  sq.canonicalize();
  if (sq.get_den() != 1) throw std::logic_error("norm product is not integral");
  BigInt F = exact_sqrt(sq.get_num(), "norm product did not give a square");
  // Complex conjugate pairs contribute |Psi_N(b_j)|^2 > 0; real roots contribute the
  // sign (-1)^(orbit points above b_j).
  std::uint64_t parity = 0;
  for (long bits = 128;; bits *= 2) {
    if (bits > (1 << 14)) throw ConvergenceError("could not separate b from the orbit", 0.0, 0.0);
    auto roots = complex_roots_mp(f, bits);
    bool ok = true;
    parity = 0;
    for (const auto& rt : roots) {
      if (!rt.center.im.is_zero()) continue;
      auto c = conjugates_above(N, rt.center.re, rt.radius);
      if (!c) {
        ok = false;
        break;
      }
      parity += *c;
    }
    if (ok) break;
  }
  return parity % 2 == 0 ? F : BigInt(-F);
}

}  // namespace chebdyn
