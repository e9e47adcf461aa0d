// Acceptance run: one PASS/FAIL line per criterion. `--criterion k` runs one of them,
// no argument runs all ten. Tolerances are fixed below and not configurable.
#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>

#include "chebdyn/baker.hpp"
#include "chebdyn/chebyshev.hpp"
#include "chebdyn/equidistribution.hpp"
#include "chebdyn/factor.hpp"
#include "chebdyn/harness.hpp"
#include "chebdyn/heights.hpp"
#include "chebdyn/integrality.hpp"

using namespace chebdyn;

namespace {

constexpr double kOrbitResidual = 1e-9;
constexpr double kOrbitSeconds = 5.0;
constexpr double kHeightTol = 1e-9;
constexpr double kIdentityGap = 1e-9;
constexpr double kSlopeMax = -0.4;
constexpr double kLastDiscrepancy = 1e-2;
constexpr double kAzAgree = 1e-8;
constexpr double kAzGap = 5e-2;
constexpr std::uint64_t kAzSize = 500;
constexpr double kBakerEps = 0.1;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string list(const std::vector<std::uint64_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Rat random_non_preperiodic(Rng& rng, std::int64_t bound) {
  while (true) {
    const Rat q = random_rational(rng, bound);
    if (!is_preperiodic_rational(q)) return q;
  }
}

// 1. deg Psi_N = |orbit|, monic, |Psi_N(conjugate)| small, for N <= 1000.
// The monomial form is tied to its Chebyshev-basis expansion by an exact
// evaluation at x = 3; the expansion is then evaluated at each conjugate
// through T_k(2cos t) = 2cos(k t), which avoids the cancellation that the
// huge monomial coefficients would cause in floating point.
Outcome orbit_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr std::uint64_t kMax = 1000;
  std::vector<BigInt> t_at_3{2, 3};
  for (std::size_t k = 2; k <= kMax; ++k) t_at_3.push_back(3 * t_at_3[k - 1] - t_at_3[k - 2]);
  double worst = 0.0;
  std::uint64_t bad = 0;
  for (std::uint64_t N = 1; N <= kMax; ++N) {
    const IntPoly P = psi(N);
    const auto c = psi_chebyshev_coeffs(N);
    bool ok = P.degree() == static_cast<int>(orbit_size(N)) && P.is_monic() &&
              c.size() == static_cast<std::size_t>(P.degree()) + 1;
    BigInt via_t = c[0];
    for (std::size_t k = 1; k < c.size(); ++k) via_t += c[k] * t_at_3[k];
    ok = ok && P.eval(Rat(3)) == via_t;
    for (std::uint64_t a : orbit_exponents(N)) {
      double v = c[0].get_d();
      for (std::size_t k = 1; k < c.size(); ++k) {
        // k a mod N keeps the cosine argument small and exact.
        const double t = 2 * std::numbers::pi * static_cast<double>((k * a) % N) / static_cast<double>(N);
        v += c[k].get_d() * 2 * std::cos(t);
      }
      worst = std::max(worst, std::fabs(v));
      ok = ok && std::fabs(v) <= kOrbitResidual;
    }
    bad += !ok;
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && secs < kOrbitSeconds,
          fmt("N<=1000: failures=%.0f max|Psi_N(conj)|=%.3g runtime=%.2fs (limit 5s)", static_cast<double>(bad), worst,
              secs)};
}

// 2. Canonical heights against the w + 1/w closed form; orbit points have height 0.
Outcome canonical_height_oracle() {
  const ChebMap sq(2);
  const double w3 = std::log((3 + std::sqrt(5.0)) / 2);
  // 1/2 = w + 1/w with 2w^2 - w + 2 = 0: Mahler measure 2, so h(w) = (log 2)/2 and
  // h_phi(1/2) = 2 h(w) = log 2.
  const double w_half = std::log(2.0);
  const double e3 = std::fabs(canonical_height(Rat(3), sq, 1e-12).value - w3);
  const double eh = std::fabs(canonical_height(Rat(1, 2), sq, 1e-12).value - w_half);
  double worst = 0.0;
  for (std::uint64_t N = 1; N <= 50; ++N) {
    const auto o = preperiodic_orbit(N);
    for (int k = 0; k < static_cast<int>(o.size); ++k)
      worst = std::max(worst, canonical_height(o.generator(k), sq, 1e-12).value);
  }
  return {e3 <= kHeightTol && eh <= kHeightTol && worst <= kHeightTol,
          fmt("|h(3)-log((3+sqrt5)/2)|=%.3g |h(1/2)-log2|=%.3g max orbit height=%.3g (tol 1e-9)", e3, eh, worst)};
}

// 3. Sum of lambda over all places = h(beta) + h(orbit point).
// The rho budget is cut to keep the run short: a resultant with two large prime
// factors then keeps a cofactor c, summed as log|c| / |P| without a Newton polygon.
// Every other prime goes through the polygon. The cofactor count is reported.
Outcome lambda_identity() {
  Rng rng(kSeed);
  std::vector<Rat> betas{Rat(3)};
  while (betas.size() < 101) betas.push_back(random_non_preperiodic(rng, 50));
  FactorBudget budget;
  budget.rho_iterations = 200'000;
  double worst = 0.0;
  std::uint64_t checked = 0, with_cofactor = 0, primes = 0;
  for (const Rat& b : betas) {
    for (std::uint64_t N = 1; N <= 60; ++N) {
      const auto id = total_lambda_identity_check(N, b, budget);
      worst = std::max(worst, std::fabs(id.gap));
      with_cofactor += id.unfactored != 1;
      primes += id.places.size();
      ++checked;
    }
  }
  return {worst <= kIdentityGap,
          fmt("%.0f (N, beta) pairs, 100 seeded beta: max gap=%.3g (tol 1e-9); ", static_cast<double>(checked), worst) +
              fmt("%.0f meeting primes via Newton polygon, %.0f pairs with an unfactored cofactor",
                  static_cast<double>(primes), static_cast<double>(with_cofactor))};
}

// 4. v_p(Res(Psi_N, s x - r)) against the positive root valuations of s^d Psi_N(b - x).
Outcome dual_oracle() {
  std::vector<unsigned long> primes;
  for (unsigned long p = 2; p <= 97; ++p)
    if (is_prime_u64(p)) primes.push_back(p);
  std::uint64_t instances = 0, disagree = 0;
  for (long s = 1; s <= 50; ++s) {
    for (long r = -50; r <= 50; ++r) {
      if (std::gcd(r, s) != 1) continue;
      const Rat b = make_rat(r, s);
      if (is_preperiodic_rational(b)) continue;
      for (std::uint64_t N = 1; N <= 60; ++N) {
        const BigInt F = psi_at(N, b);
        const IntPoly g = psi(N).reflected_shift(b);
        for (unsigned long p : primes) {
          ++instances;
          const long via_res = valuation_unchecked(F, p);
          Rat via_np = 0;
          for (const auto& v : newton_polygon_valuations(g, BigInt(p)))
            if (v > Valuation(0L)) via_np += v.value();
          // v_p(F) = sum over roots of v_p(s (b - a)); for p | s every term is 0,
          // otherwise the s factor is a unit and only the positive valuations count.
          disagree += via_np != via_res;
        }
      }
    }
  }
  return {disagree == 0, fmt("%.0f (N, beta, p) instances: disagreements=%.0f", static_cast<double>(instances),
                             static_cast<double>(disagree))};
}

// 5. S-integral orbit list for beta = 3, S = {inf,2,3,5,11}.
Outcome ih_tucker() {
  const PlaceSet S = PlaceSet::parse("inf,2,3,5,11");
  const auto b = AlgebraicNumber::rational(Rat(3));
  const auto big = scan_s_integral_orbits(b, S, 5000).ns();
  const auto small = scan_s_integral_orbits(b, S, 500).ns();
  const std::uint64_t stable = small.empty() ? 0 : small.back();  // no new N after this within N <= 500
  std::vector<std::uint64_t> beyond_big, beyond_small, upto12;
  for (auto n : big) (n > stable ? beyond_big : beyond_small).push_back(n);
  for (auto n : big)
    if (n <= 12) upto12.push_back(n);
  const bool stable_ok = beyond_big.empty() && beyond_small == small;
  const std::vector<std::uint64_t> want{1, 2, 3, 4, 5, 6, 12};
  const bool exact_ok = upto12 == want;
  return {stable_ok && exact_ok, "N<=5000 list=" + list(big) + " stabilizes after N=" + std::to_string(stable) +
                                     (stable_ok ? " (same as N<=500)" : " (differs from N<=500)") +
                                     "; N<=12 part " + list(upto12) + " vs required " + list(want) +
                                     " (Psi_10(3)=" + psi_at(10, Rat(3)).get_str() + ")"};
}

// 6. At most one orbit point at v_p(b - a) >= 1/(p-1) over N <= 500.
Outcome cor33_property() {
  Rng rng(kSeed);
  std::vector<unsigned long> primes;
  for (unsigned long p = 2; p <= 50; ++p)
    if (is_prime_u64(p)) primes.push_back(p);
  std::uint64_t failing = 0, worst = 0, strict_failing = 0;
  std::string example;
  for (int t = 0; t < 100; ++t) {
    const Rat b = random_non_preperiodic(rng, 50);
    const unsigned long p = primes[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(primes.size()) - 1))];
    const auto rep = near_point_check(b, BigInt(p), 500);
    if (!rep.holds()) {
      ++failing;
      if (example.empty()) {
        example = " first: beta=" + to_string(b) + " p=" + std::to_string(p) + " N=";
        for (const auto& o : rep.flagged_orbits) example += std::to_string(o.N) + ",";
        example.pop_back();
      }
    }
    strict_failing += !rep.holds_strict();
    worst = std::max(worst, rep.flagged_points);
  }
  return {failing == 0, fmt("100 seeded (beta, p<=50) pairs: %.0f with >1 flagged point (max %.0f);", static_cast<double>(failing),
                            static_cast<double>(worst)) +
                            example + fmt("; at threshold 2/(p-1): %.0f pairs with >1", static_cast<double>(strict_failing))};
}

// 7. Archimedean discrepancy decay for beta = 3 over prime N in [100, 5000].
Outcome equidistribution_decay() {
  std::vector<double> x, y;
  double last = 0.0;
  std::uint64_t last_n = 0;
  for (std::uint64_t N = 100; N <= 5000; ++N) {
    if (!is_prime_u64(N)) continue;
    const auto d = discrepancy(N, Rat(3), Place::archimedean());
    x.push_back(static_cast<double>(d.orbit_size));
    y.push_back(d.discrepancy);
    last = d.discrepancy;
    last_n = N;
  }
  const double slope = loglog_slope(x, y);
  return {slope <= kSlopeMax && last <= kLastDiscrepancy,
          fmt("%.0f primes: log-log slope=%.4f (<= -0.4)", static_cast<double>(x.size()), slope) +
              fmt(", discrepancy at N=%.0f is %.3g (<= 1e-2)", static_cast<double>(last_n), last)};
}

// 8. Two assemblies of the pairing limit agree; orbit totals approach it.
Outcome az_pairing() {
  bool ok = true;
  std::string detail;
  for (const Rat& b : {Rat(3), Rat(10), Rat(7, 2)}) {
    const auto az = az_pairing_estimate(b, 2000);
    const double agree = std::fabs(az.limit - az.limit_alt);
    double worst = 0.0;
    std::uint64_t counted = 0;
    for (const auto& t : az.terms) {
      if (t.size < kAzSize) continue;
      worst = std::max(worst, t.gap);
      ++counted;
    }
    ok = ok && agree <= kAzAgree && counted > 0 && worst <= kAzGap;
    detail += "beta=" + to_string(b) + fmt(": |limit-alt|=%.2g, max gap over %.0f orbits with |P|>=500 = %.3g; ", agree,
                                          static_cast<double>(counted), worst);
  }
  return {ok, detail + "(tol 1e-8, 5e-2)"};
}

// 9. Angle approximation bound at every convergent with N <= 10^4.
Outcome baker_inequality() {
  const std::vector<IntPoly> polys{{5, -6, 5}, {13, -10, 13}, {25, -14, 25}, {17, -16, 17}, {29, -4, 29}};
  std::uint64_t violations = 0, chain = 0, convergents = 0;
  double max_c = 0.0, max_cal = 0.0;
  for (const auto& f : polys) {
    const auto pt = unit_circle_point(AlgebraicNumber::from_minpoly(f, 1));
    const double c = explicit_c_epsilon(pt, kBakerEps);
    const auto conv = angle_convergents(pt, BigInt(10000));
    for (const auto& cv : conv) {
      const auto g = corollary_gap(pt, cv.a, cv.N, kBakerEps, c);
      violations += !g.holds;
      chain += !g.chain_holds;
      ++convergents;
    }
    max_c = std::max(max_c, c);
    max_cal = std::max(max_cal, calibrated_c_epsilon(pt, conv, kBakerEps));
  }
  return {violations == 0 && chain == 0 && max_cal <= max_c,
          fmt("5 points, %.0f convergents, eps=0.1: violations=%.0f", static_cast<double>(convergents),
              static_cast<double>(violations)) +
              fmt(", linear-form chain failures=%.0f, explicit C_eps<=%.4g, calibrated C_eps<=%.3g",
                  static_cast<double>(chain), max_c, max_cal)};
}

// 10. Exceptional S-integral orbits over 50 seeded beta.
Outcome theorem2_count() {
  const auto s = exceptional_count_experiment(PlaceSet::parse("inf,2,3"), 2, std::log(100.0), 2000, 50, kSeed);
  std::uint64_t quadratic = 0;
  for (const auto& r : s.rows) quadratic += r.degree == 2;
  return {s.max_exceptional <= 2 && s.pass,
          fmt("50 beta (%.0f quadratic), N<=2000: max exceptional count=%.0f (<= 2)", static_cast<double>(quadratic),
              static_cast<double>(s.max_exceptional))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> all{
      {"orbit exactness", orbit_exactness},
      {"canonical height oracle", canonical_height_oracle},
      {"exact lambda-sum identity", lambda_identity},
      {"dual-oracle S-integrality", dual_oracle},
      {"S-integral orbit finiteness (beta=3)", ih_tucker},
      {"p-adic near-point property", cor33_property},
      {"equidistribution decay", equidistribution_decay},
      {"pairing limit consistency", az_pairing},
      {"angle approximation bound", baker_inequality},
      {"exceptional orbit count", theorem2_count},
  };
  bool all_pass = true;
  for (int k = 1; k <= 10; ++k) {
    if (only && k != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[static_cast<std::size_t>(k - 1)].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d %s: %s [%s] (%.1fs)\n", k, o.pass ? "PASS" : "FAIL", all[static_cast<std::size_t>(k - 1)].first,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
