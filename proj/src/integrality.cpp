#include "chebdyn/integrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chebdyn/mp_real.hpp"

namespace chebdyn {

namespace {

using u64 = std::uint64_t;

long valuation_big(const BigInt& n, const BigInt& p) {
  if (p.fits_ulong_p()) return valuation_unchecked(n, p.get_ui());
  BigInt m = n;
  return static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
}

int valuation_u64(u64 x, u64 p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (v < cap && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

struct HullPoint {
  long i;
  Rat v;
  bool capped;
};

// Lower convex hull by monotone chain; collinear interior points are dropped.
std::vector<HullPoint> lower_hull(const std::vector<HullPoint>& pts) {
  std::vector<HullPoint> h;
  for (const auto& q : pts) {
    while (h.size() >= 2) {
      const auto& a = h[h.size() - 2];
      const auto& b = h[h.size() - 1];
      // Drop b unless it lies strictly below segment a-q.
      Rat cross = (b.v - a.v) * (q.i - a.i) - (q.v - a.v) * (b.i - a.i);
      if (cross >= 0) {
        h.pop_back();
      } else {
        break;
      }
    }
    h.push_back(q);
  }
  return h;
}

// Root valuations (ascending) from hull vertices.
std::vector<Rat> hull_valuations(const std::vector<HullPoint>& h) {
  std::vector<Rat> out;
  for (std::size_t k = 0; k + 1 < h.size(); ++k) {
    const long len = h[k + 1].i - h[k].i;
    Rat slope = (h[k + 1].v - h[k].v) / Rat(len);
    for (long j = 0; j < len; ++j) out.push_back(-slope);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

void check_prime(const BigInt& p) {
  if (!is_prime(p)) throw DomainError("not a prime: " + p.get_str());
}

MeetingPrimes meeting_from_resultant(BigInt F, const FactorBudget& budget) {
  if (F == 0) throw DomainError("beta is a point of the orbit");
  MeetingPrimes m;
  auto pf = factorize_partial(F, budget);
  for (const auto& [p, e] : pf.primes) m.primes[p] = e;
  m.unfactored = pf.cofactor;
  m.resultant = std::move(F);
  return m;
}

SIntegralityReport report_from(std::uint64_t N, std::string beta, BigInt F, const PlaceSet& S,
                               const FactorBudget& budget) {
  SIntegralityReport r;
  r.orbit_n = N;
  r.beta = std::move(beta);
  r.is_s_integral = s_integral_verdict(F, S);
  r.meeting = meeting_from_resultant(std::move(F), budget);
  if (!r.is_s_integral) {
    for (const auto& [p, e] : r.meeting.primes) {
      if (!S.contains_prime(p)) {
        r.witness = p;
        break;
      }
    }
    if (!r.witness && r.meeting.unfactored != 1) {
      BigInt w = find_prime_factor(r.meeting.unfactored, budget);
      if (w != 0) r.witness = w;
    }
  }
  return r;
}

double log_mag(const BigInt& n) { return n == 0 ? -HUGE_VAL : log_abs(n); }

const BigInt& max_abs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) >= 0 ? a : b; }

Proximity finish(const std::vector<double>& dist, const std::vector<double>& err,
                 const std::vector<std::uint64_t>& exps, bool& ok) {
  double lo = HUGE_VAL, hi = HUGE_VAL, best = HUGE_VAL;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    lo = std::min(lo, dist[i] - err[i]);
    hi = std::min(hi, dist[i] + err[i]);
    if (dist[i] < best) {
      best = dist[i];
      arg = i;
    }
  }
  Proximity p;
  p.exponent = exps[arg];
  p.value = -std::log(best);
  ok = lo > 0.0;
  if (ok) p.error = std::max(std::log(hi) - std::log(best), std::log(best) - std::log(lo)) * (1 + 1e-12) + 1e-300;
  ok = ok && p.error <= 1e-10 * std::max(1.0, std::fabs(p.value));
  return p;
}

// Distances to the candidate conjugates recomputed in MPFR. `center`/`radius` describe b.
Proximity proximity_mp(std::uint64_t N, const MpComplex& center, const MpReal& radius, long bits, bool& ok) {
  const auto exps = orbit_exponents(N);
  std::vector<double> dist, err;
  for (std::uint64_t a : exps) {
    MpReal alpha = N == 1 ? MpReal(2.0, bits) : two_cos_rational_angle(static_cast<long>(a), static_cast<long>(N), bits);
    MpReal d = hypot(alpha - center.re, center.im);
    // Conjugate rounding is a few units in the last place; radius covers b.
    MpReal slack(1.0, bits);
    mpfr_mul_2si(slack.get(), slack.get(), 8 - bits, MPFR_RNDU);
    // The logs only need the magnitude of the gap, so doubles suffice from here on.
    dist.push_back(d.to_double());
    err.push_back((radius + slack).to_double() * (1 + 1e-12) + d.to_double() * 0x1p-52);
  }
  return finish(dist, err, exps, ok);
}

}  // namespace

long valuation_unchecked(const BigInt& n, unsigned long p) {
  if (n == 0) throw DomainError("valuation of zero");
  if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) return 0;
  BigInt m = n, pp(p);
  return static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t()));
}

Valuation padic_valuation(const Rat& q, const BigInt& p) {
  check_prime(p);
  if (q == 0) return Valuation::infinity();
  return Valuation(valuation_big(q.get_num(), p) - valuation_big(q.get_den(), p));
}

double chordal_distance(const ProjectivePoint& x, const ProjectivePoint& y, const Place& v) {
  const BigInt num = x.x1 * y.x2 - y.x1 * x.x2;
  if (num == 0) return 0.0;
  return std::exp(-lambda(x, y, v));
}

double chordal_distance(const Rat& x, const Rat& y, const Place& v) {
  return chordal_distance(ProjectivePoint::from(x), ProjectivePoint::from(y), v);
}

double chordal_distance(std::complex<double> x, std::complex<double> y) {
  return std::abs(x - y) / (std::max(1.0, std::abs(x)) * std::max(1.0, std::abs(y)));
}

double lambda(const ProjectivePoint& x, const ProjectivePoint& y, const Place& v) {
  const BigInt num = x.x1 * y.x2 - y.x1 * x.x2;
  if (num == 0) throw DomainError("lambda is infinite at coincident points");
  if (v.is_archimedean()) {
    return log_mag(max_abs(x.x1, x.x2)) + log_mag(max_abs(y.x1, y.x2)) - log_mag(num);
  }
  const BigInt& p = v.prime();
  auto vmin = [&](const ProjectivePoint& z) {
    if (z.x1 == 0) return valuation_big(z.x2, p);
    if (z.x2 == 0) return valuation_big(z.x1, p);
    return std::min(valuation_big(z.x1, p), valuation_big(z.x2, p));
  };
  const long e = valuation_big(num, p) - vmin(x) - vmin(y);
  return static_cast<double>(e) * log_abs(p);
}

double lambda(const Rat& x, const Rat& y, const Place& v) {
  return lambda(ProjectivePoint::from(x), ProjectivePoint::from(y), v);
}

ApproxReal lambda_archimedean(const ApproxComplex& x, const ApproxComplex& y) {
  const double d = std::abs(x.value - y.value);
  const double e = x.error + y.error + d * 0x1p-51;
  if (d <= e) throw ConvergenceError("points coincide within numeric error", 0.0, HUGE_VAL);
  const double ax = std::abs(x.value), ay = std::abs(y.value);
  const double v = std::log(std::max(1.0, ax)) + std::log(std::max(1.0, ay)) - std::log(d);
  const double err = x.error + y.error + (std::log(d) - std::log(d - e)) + std::fabs(v) * 0x1p-50;
  return {v, err};
}

MeetingPrimes meeting_primes(std::uint64_t N, const Rat& b, const FactorBudget& budget) {
  return meeting_from_resultant(psi_at(N, b), budget);
}

MeetingPrimes meeting_primes(std::uint64_t N, const AlgebraicNumber& b, const FactorBudget& budget) {
  return meeting_from_resultant(psi_resultant(N, b), budget);
}

bool s_integral_verdict(const BigInt& resultant, const PlaceSet& S) {
  if (resultant == 0) throw DomainError("beta is a point of the orbit");
  BigInt m = abs(resultant);
  for (const auto& p : S.primes()) {
    mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
  }
  return m == 1;
}

SIntegralityReport is_s_integral(std::uint64_t N, const Rat& b, const PlaceSet& S, const FactorBudget& budget) {
  return report_from(N, to_string(b), psi_at(N, b), S, budget);
}

SIntegralityReport is_s_integral(std::uint64_t N, const AlgebraicNumber& b, const PlaceSet& S,
                                 const FactorBudget& budget) {
  std::string name = b.is_rational() ? to_string(b.as_rational())
                                     : "root " + std::to_string(b.embedding()) + " of " + b.minpoly().to_string();
  return report_from(N, std::move(name), psi_resultant(N, b), S, budget);
}

std::vector<Valuation> newton_polygon_valuations(const IntPoly& g, const BigInt& p) {
  check_prime(p);
  if (g.is_zero()) throw DomainError("Newton polygon of the zero polynomial");
  std::vector<HullPoint> pts;
  long zeros = 0;
  while (g.coeff(static_cast<int>(zeros)) == 0) ++zeros;
  for (int i = static_cast<int>(zeros); i <= g.degree(); ++i) {
    const BigInt& c = g.coeffs()[static_cast<std::size_t>(i)];
    if (c != 0) pts.push_back({i, Rat(valuation_big(c, p)), false});
  }
  std::vector<Valuation> out;
  for (const auto& v : hull_valuations(lower_hull(pts))) out.emplace_back(v);
  for (long j = 0; j < zeros; ++j) out.push_back(Valuation::infinity());
  return out;
}

std::optional<std::vector<Rat>> newton_polygon_valuations_mod(const std::vector<std::uint64_t>& g, std::uint64_t p,
                                                              int K) {
  std::vector<HullPoint> pts;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int v = valuation_u64(g[i], p, K);
    pts.push_back({static_cast<long>(i), Rat(v), v >= K});
  }
  const auto h = lower_hull(pts);
  for (const auto& q : h) {
    if (q.capped) return std::nullopt;
  }
  return hull_valuations(h);
}

std::vector<std::uint64_t> reflected_shift_mod(const std::vector<std::uint64_t>& psi_coeffs, const Rat& b,
                                               std::uint64_t M) {
  if (psi_coeffs.empty()) return {};
  const u64 r = mpz_fdiv_ui(b.get_num_mpz_t(), M);
  const u64 s = mpz_fdiv_ui(b.get_den_mpz_t(), M);
  const u64 neg_s = (M - s) % M;
  std::vector<u64> acc{psi_coeffs.back() % M};
  acc.reserve(psi_coeffs.size());
  u64 spow = 1;
  for (std::size_t k = psi_coeffs.size() - 1; k-- > 0;) {
    spow = spow * s % M;
    // acc <- acc * (r - s x) + c_k s^(d-k)
    acc.push_back(0);
    for (std::size_t i = acc.size() - 1; i > 0; --i) acc[i] = (acc[i] * r % M + acc[i - 1] * neg_s % M) % M;
    acc[0] = (acc[0] * r % M + psi_coeffs[k] % M * spow % M) % M;
  }
  return acc;
}

Valuation root_of_unity_valuation(std::uint64_t m, const BigInt& p) {
  check_prime(p);
  if (m == 0) throw DomainError("order must be positive");
  if (m == 1) return Valuation::infinity();
  if (!p.fits_ulong_p()) return Valuation(0L);
  const u64 q = p.get_ui();
  u64 rest = m, pn1 = 1;
  int n = 0;
  while (rest % q == 0) {
    rest /= q;
    if (n > 0) pn1 *= q;
    ++n;
  }
  if (rest != 1) return Valuation(0L);
  return Valuation(make_rat(1, BigInt(static_cast<unsigned long>((q - 1) * pn1))));
}

NearPointReport near_point_check(const Rat& b, const BigInt& p, std::uint64_t n_max) {
  check_prime(p);
  if (is_preperiodic_rational(b)) throw DomainError("beta is preperiodic");
  NearPointReport rep;
  rep.beta = b;
  rep.p = p;
  rep.n_max = n_max;
  // A p-adically non-integral b sits at valuation v_p(b) < 0 from every (integral) orbit point.
  if (mpz_divisible_p(b.get_den_mpz_t(), p.get_mpz_t())) return rep;
  const Rat t = make_rat(1, p - 1), t2 = make_rat(2, p - 1);
  const bool small = p.fits_ulong_p() && p < 65536;
  const u64 q = small ? p.get_ui() : 0;
  int K = 0;
  u64 M = 1;
  while (small && M * q < (u64{1} << 32)) {
    M *= q;
    ++K;
  }
  for (std::uint64_t N = 1; N <= n_max; ++N) {
    std::optional<std::vector<Rat>> vals;
    if (small && K >= 2) vals = newton_polygon_valuations_mod(reflected_shift_mod(psi_mod(N, M), b, M), q, K);
    if (!vals) {
      vals.emplace();
      for (const auto& v : newton_polygon_valuations(psi(N).reflected_shift(b), p)) vals->push_back(v.value());
    }
    NearPointOrbit o;
    o.N = N;
    o.max_valuation = vals->empty() ? Rat(0) : vals->back();
    for (const auto& v : *vals) {
      if (v >= t) ++o.flagged;
      if (v > t2) ++o.flagged_strict;
    }
    if (o.flagged > 0) {
      rep.flagged_points += o.flagged;
      rep.flagged_points_strict += o.flagged_strict;
      rep.flagged_orbits.push_back(o);
    }
  }
  return rep;
}

Proximity arch_proximity(std::uint64_t N, const ApproxComplex& b) {
  const auto exps = orbit_exponents(N);
  const auto conj = orbit_conjugates(N);
  std::vector<double> dist, err;
  for (const auto& a : conj) {
    const double d = std::abs(std::complex<double>(a.value, 0.0) - b.value);
    dist.push_back(d);
    err.push_back(a.error + b.error + d * 0x1p-51);
  }
  bool ok = false;
  Proximity p = finish(dist, err, exps, ok);
  double lo = HUGE_VAL;
  for (std::size_t i = 0; i < dist.size(); ++i) lo = std::min(lo, dist[i] - err[i]);
  if (!(lo > 0.0)) throw ConvergenceError("beta coincides with a conjugate within numeric error", p.value, HUGE_VAL);
  return p;
}

Proximity arch_proximity(std::uint64_t N, const Rat& b, long max_bits) {
  if (psi_at(N, b) == 0) throw DomainError("beta is a point of the orbit");
  bool ok = false;
  Proximity best;
  try {
    best = arch_proximity(N, to_complex(approx(b)));
    double lo = std::exp(-best.value - best.error);
    ok = lo > 0 && best.error <= 1e-10 * std::max(1.0, std::fabs(best.value));
  } catch (const ConvergenceError&) {
    ok = false;
  }
  for (long bits = 128; !ok && bits <= std::max(128L, max_bits); bits *= 2) {
    best = proximity_mp(N, {MpReal(b, bits), MpReal(bits)}, MpReal(bits), bits, ok);
  }
  if (!ok) throw ConvergenceError("proximity not resolved at the precision ceiling", best.value, best.error);
  return best;
}

Proximity arch_proximity(std::uint64_t N, const AlgebraicNumber& b, long max_bits) {
  if (b.is_rational()) return arch_proximity(N, b.as_rational(), max_bits);
  if (psi_resultant(N, b) == 0) throw DomainError("beta is a point of the orbit");
  bool ok = false;
  Proximity best;
  try {
    best = arch_proximity(N, b.value());
    ok = best.error <= 1e-10 * std::max(1.0, std::fabs(best.value));
  } catch (const ConvergenceError&) {
    ok = false;
  }
  for (long bits = 128; !ok && bits <= std::max(128L, max_bits); bits *= 2) {
    const auto roots = complex_roots_mp(b.minpoly(), bits);
    const auto& r = roots[static_cast<std::size_t>(b.embedding())];
    best = proximity_mp(N, r.center, r.radius, bits, ok);
  }
  if (!ok) throw ConvergenceError("proximity not resolved at the precision ceiling", best.value, best.error);
  return best;
}

}  // namespace chebdyn
