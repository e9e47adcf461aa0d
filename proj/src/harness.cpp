#include "chebdyn/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chebdyn/chebyshev.hpp"
#include "chebdyn/heights.hpp"
#include "chebdyn/integrality.hpp"

namespace chebdyn {

namespace {

// v_p of n for each p in S; n is left with the part outside S.
std::map<BigInt, long> strip(BigInt& n, const PlaceSet& S) {
  std::map<BigInt, long> out;
  for (const auto& p : S.primes()) {
    const long e = static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
    if (e > 0) out[p] = e;
  }
  return out;
}

BigInt parse_int(const std::string& t) {
  BigInt v;
  if (t.empty() || v.set_str(t, 10) != 0) throw DomainError("malformed integer: '" + t + "'");
  return v;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n_max < 1) throw DomainError("Nmax must be at least 1");
  if (d < 2) throw DomainError("Chebyshev degree must be at least 2");
  if (!(constants.delta > 0 && constants.delta < 0.5)) throw DomainError("delta must lie in (0, 1/2)");
  if (!(constants.eps > 0)) throw DomainError("eps must be positive");
  parse_beta(beta);
}

AlgebraicNumber parse_beta(const std::string& text) {
  if (text.rfind("poly:", 0) == 0) {
    std::string body = text.substr(5);
    int k = 0;
    if (auto at = body.find('@'); at != std::string::npos) {
      const std::string idx = body.substr(at + 1);
      if (idx.empty() || !std::all_of(idx.begin(), idx.end(), ::isdigit)) throw DomainError("malformed embedding: " + text);
      k = std::stoi(idx);
      body = body.substr(0, at);
    }
    std::vector<BigInt> c;
    std::size_t pos = 0;
    while (true) {
      const auto comma = body.find(',', pos);
      c.push_back(parse_int(body.substr(pos, comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    IntPoly f(std::move(c));
    if (f.degree() < 1) throw DomainError("minimal polynomial must have degree >= 1");
    if (k < 0 || k >= f.degree()) throw DomainError("embedding index out of range: " + text);
    return AlgebraicNumber::from_minpoly(f, k);
  }
  return AlgebraicNumber::rational(parse_rat(text));
}

std::string describe(const AlgebraicNumber& b) {
  if (b.is_rational()) return to_string(b.as_rational());
  std::string s = "poly:";
  const auto& c = b.minpoly().coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + c[i].get_str();
  return s + "@" + std::to_string(b.embedding());
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw DomainError("empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(gen_());
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

double Rng::unit() { return static_cast<double>(gen_() >> 11) * 0x1p-53; }

Rat random_rational(Rng& rng, std::int64_t bound) {
  const std::int64_t r = rng.uniform(-bound, bound);
  const std::int64_t s = rng.uniform(1, bound);
  return make_rat(BigInt(static_cast<long>(r)), BigInt(static_cast<long>(s)));
}

std::vector<std::uint64_t> ScanResult::ns() const {
  std::vector<std::uint64_t> out;
  for (const auto& o : orbits) out.push_back(o.N);
  return out;
}

double exceptional_threshold(int D, double c) { return c * std::pow(static_cast<double>(D), 12); }

double dobrowolski_step(int D, double N, double C) {
  return dobrowolski_floor(D, C) * (1.0 - 1.0 / (N * std::pow(static_cast<double>(D), 2.5)));
}

ScanResult scan_s_integral_orbits(const AlgebraicNumber& b, const PlaceSet& S, std::uint64_t n_max,
                                  double threshold_c) {
  if (n_max < 1) throw DomainError("Nmax must be at least 1");
  if (is_preperiodic(b)) {
    throw DomainError("beta is preperiodic (of the form 2cos(2 pi a / N)); the scan needs a non-preperiodic beta");
  }
  ScanResult out;
  out.n_max = n_max;
  out.threshold = exceptional_threshold(b.degree(), threshold_c);
  out.s_fin = S.finite_count();
  for (std::uint64_t N = 1; N <= n_max; ++N) {
    BigInt F = b.is_rational() ? psi_at(N, b.as_rational()) : psi_resultant(N, b);
    F = abs(F);
    auto meeting = strip(F, S);
    if (F != 1) continue;
    ScanOrbit o{N, orbit_size(N), std::move(meeting)};
    if (static_cast<double>(o.size) > out.threshold) ++out.exceptional_count;
    out.last_new = N;
    out.orbits.push_back(std::move(o));
  }
  out.count_ok = out.exceptional_count <= out.s_fin;
  return out;
}

ExceptionalSummary exceptional_count_experiment(const PlaceSet& S, int d_cap, double height_cap, std::uint64_t n_max,
                                    int trials, std::uint64_t seed, const ExperimentConstants& k) {
  if (trials < 1) throw DomainError("trials must be at least 1");
  if (d_cap < 1 || d_cap > 2) throw DomainError("degree cap must be 1 or 2 (rational and quadratic samples)");
  ExceptionalSummary sum;
  sum.s_fin = S.finite_count();
  for (int D = 1; D <= d_cap; ++D) sum.threshold_curve.emplace_back(D, exceptional_threshold(D, k.threshold_c));
  for (int D = 2; D <= d_cap; ++D) sum.dobrowolski.emplace_back(D, dobrowolski_floor(D, k.dobrowolski_c));
  Rng rng(seed);
  const auto bound = static_cast<std::int64_t>(std::floor(std::exp(height_cap) + 1e-9));
  for (int t = 0; t < trials; ++t) {
    const bool quadratic = d_cap >= 2 && (t % 2 == 1);
    std::optional<AlgebraicNumber> b;
    while (!b) {
      if (!quadratic) {
        const Rat q = random_rational(rng, std::max<std::int64_t>(bound, 1));
        if (is_preperiodic_rational(q) || weil_height(q).value > height_cap) continue;
        b = AlgebraicNumber::rational(q);
      } else {
        const long cb = std::max<long>(1, static_cast<long>(bound));
        const long a = rng.uniform(1, cb), bb = rng.uniform(-cb, cb), c = rng.uniform(-cb, cb);
        const long disc = bb * bb - 4 * a * c;
        if (c == 0 || std::gcd(std::gcd(a, bb), c) != 1) continue;
        if (disc >= 0) {
          const long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(disc))));
          if (r * r == disc) continue;  // reducible
        }
        auto cand = AlgebraicNumber::from_minpoly(IntPoly{c, bb, a}, static_cast<int>(rng.uniform(0, 1)));
        if (is_preperiodic(cand) || weil_height(cand).value > height_cap) continue;
        b = std::move(cand);
      }
    }
    const ScanResult sr = scan_s_integral_orbits(*b, S, n_max, k.threshold_c);
    ExceptionalRow row;
    row.beta = describe(*b);
    row.degree = b->degree();
    row.height = weil_height(*b).value;
    row.s_integral = sr.ns();
    row.exceptional = sr.exceptional_count;
    for (const auto& o : sr.orbits) row.max_size = std::max(row.max_size, o.size);
    sum.max_exceptional = std::max(sum.max_exceptional, row.exceptional);
    sum.pass = sum.pass && sr.count_ok;
    sum.rows.push_back(std::move(row));
  }
  return sum;
}

}  // namespace chebdyn
