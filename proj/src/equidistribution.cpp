#include "chebdyn/equidistribution.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "chebdyn/heights.hpp"
#include "chebdyn/mp_real.hpp"

namespace chebdyn {

namespace {

using boost::math::quadrature::gauss_kronrod;
constexpr double kPi = std::numbers::pi;

// Adaptive Gauss-Kronrod over consecutive breakpoints. Pieces ending at a log
// singularity go to tanh-sinh, which clusters nodes at the endpoints.
// Throws when the error estimate stays above tol.
template <class F>
double integrate(F f, std::vector<double> cuts, double tol) {
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0, err_total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    double err = 0.0;
    double v = gauss_kronrod<double, 61>::integrate(f, cuts[i], cuts[i + 1], 12, 1e-13, &err);
    if (!(err <= tol * 1e-2)) {
      static boost::math::quadrature::tanh_sinh<double> ts;
      v = ts.integrate(f, cuts[i], cuts[i + 1], 1e-13, &err);
    }
    total += v;
    err_total += err;
  }
  if (!(err_total <= tol)) throw ConvergenceError("quadrature did not converge: error " + std::to_string(err_total), total, err_total);
  return total;
}

double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

struct OrbitSum {
  double sum = 0.0;
  double error = 0.0;
  double max = -HUGE_VAL;
};

// Sum over conjugates of lambda_inf(x, b), doubles first, MPFR if b crowds a conjugate.
OrbitSum arch_orbit_sum(std::uint64_t N, const Rat& b) {
  const ApproxComplex bz = to_complex(approx(b));
  OrbitSum out;
  try {
    for (const auto& a : orbit_conjugates(N)) {
      const ApproxReal l = lambda_archimedean(to_complex(a), bz);
      out.sum += l.value;
      out.error += l.error;
      out.max = std::max(out.max, l.value);
    }
    out.error += std::fabs(out.sum) * 0x1p-50;
    if (out.error <= 1e-11 * std::max(1.0, std::fabs(out.sum))) return out;
  } catch (const ConvergenceError&) {
  }
  if (psi_at(N, b) == 0) throw DomainError("beta is a point of the orbit");
  const long ceiling = std::max(128L, default_precision_ceiling());
  for (long bits = 128; bits <= ceiling; bits *= 2) {
    OrbitSum mp;
    const MpReal bm(b, bits);
    const MpReal lb = abs(bm) > MpReal(1.0, bits) ? log(abs(bm)) : MpReal(bits);
    for (std::uint64_t a : orbit_exponents(N)) {
      const MpReal x = N == 1 ? MpReal(2.0, bits) : two_cos_rational_angle(static_cast<long>(a), static_cast<long>(N), bits);
      const MpReal diff = abs(x - bm);
      const double dd = diff.to_double();
      const double slack = std::ldexp(1.0, 10 - static_cast<int>(bits));
      if (!(dd > 4 * slack)) {
        mp.error = HUGE_VAL;
        break;
      }
      const MpReal lx = abs(x) > MpReal(1.0, bits) ? log(abs(x)) : MpReal(bits);
      const double l = (lx + lb - log(diff)).to_double();
      mp.sum += l;
      mp.error += 2 * slack / dd;
      mp.max = std::max(mp.max, l);
    }
    if (!std::isfinite(mp.error)) continue;
    mp.error += std::fabs(mp.sum) * 0x1p-50;
    return mp;
  }
  throw ConvergenceError("orbit average not resolved at the precision ceiling", out.sum, HUGE_VAL);
}

struct FiniteSum {
  Rat valuation_sum = 0;  // sum of positive root valuations of Psi_N(b - x)
  Rat max_valuation = 0;
};

// At p dividing den(b) every orbit point is p-adically far from b, and lambda_p = 0.
FiniteSum finite_orbit_sum(std::uint64_t N, const Rat& b, const BigInt& p) {
  FiniteSum out;
  if (mpz_divisible_p(b.get_den_mpz_t(), p.get_mpz_t())) return out;
  for (const auto& v : newton_polygon_valuations(psi(N).reflected_shift(b), p)) {
    if (v.is_infinite()) throw DomainError("beta is a point of the orbit");
    if (v.value() > 0) out.valuation_sum += v.value();
    out.max_valuation = std::max(out.max_valuation, v.value());
  }
  return out;
}

}  // namespace

double equilibrium_potential(std::complex<double> b) {
  if (b.imag() == 0.0 && std::fabs(b.real()) <= 2.0) return 0.0;
  const std::complex<double> r = std::sqrt(b * b - 4.0);
  const std::complex<double> w1 = 0.5 * (b + r), w2 = 0.5 * (b - r);
  // The larger root avoids cancellation; log|w| >= 0 by construction.
  return std::max(0.0, std::log(std::max(std::abs(w1), std::abs(w2))));
}

double equilibrium_potential_quadrature(std::complex<double> b, double tol) {
  auto f = [b](double t) { return std::log(std::abs(2.0 * std::cos(t) - b)); };
  std::vector<double> cuts{0.0, kPi};
  if (std::fabs(b.real()) < 2.0) cuts.push_back(std::acos(b.real() / 2.0));
  return integrate(f, cuts, tol * kPi) / kPi;
}

double log_plus_integral() {
  static const double kappa = [] {
    auto f = [](double t) { return std::log(2.0 * std::cos(t)); };
    return 2.0 / kPi * integrate(f, {0.0, kPi / 3}, 1e-10 * kPi / 2);
  }();
  return kappa;
}

double lambda_integral(std::complex<double> b) {
  return log_plus(std::abs(b)) + log_plus_integral() - equilibrium_potential(b);
}

double lambda_integral_quadrature(double b, double tol) {
  auto f = [b](double t) {
    const double x = 2.0 * std::cos(t);
    return log_plus(std::fabs(x)) + log_plus(std::fabs(b)) - std::log(std::fabs(x - b));
  };
  std::vector<double> cuts{0.0, kPi / 3, 2 * kPi / 3, kPi};
  if (std::fabs(b) < 2.0) cuts.push_back(std::acos(b / 2.0));
  return integrate(f, cuts, tol * kPi) / kPi;
}

ApproxReal orbit_lambda_average(std::uint64_t N, const Rat& b, const Place& v) {
  const double size = static_cast<double>(orbit_size(N));
  if (v.is_archimedean()) {
    const OrbitSum s = arch_orbit_sum(N, b);
    return {s.sum / size, s.error / size};
  }
  const FiniteSum f = finite_orbit_sum(N, b, v.prime());
  const double val = f.valuation_sum.get_d() * log_abs(v.prime()) / size;
  return {val, std::fabs(val) * 0x1p-50};
}

LambdaIdentity total_lambda_identity_check(std::uint64_t N, const Rat& b, const FactorBudget& budget) {
  const BigInt F = psi_at(N, b);
  if (F == 0) throw DomainError("beta is a point of the orbit");
  LambdaIdentity out;
  const ApproxReal arch = orbit_lambda_average(N, b, Place::archimedean());
  double lhs = arch.value, err = arch.error;
  const auto pf = factorize_partial(F, budget);
  std::vector<BigInt> places;
  for (const auto& [p, e] : pf.primes) places.push_back(p);
  for (const auto& [p, e] : factorize_partial(b.get_den(), budget).primes) places.push_back(p);
  std::sort(places.begin(), places.end());
  places.erase(std::unique(places.begin(), places.end()), places.end());
  for (const auto& p : places) {
    const ApproxReal t = orbit_lambda_average(N, b, Place::finite(p));
    lhs += t.value;
    err += t.error;
  }
  // A cofactor the factoring budget could not split is coprime to den(b), so its
  // primes contribute their full valuation: log|c| / |P| in total.
  if (pf.cofactor != 1) {
    lhs += log_abs(pf.cofactor) / static_cast<double>(orbit_size(N));
  }
  const HeightValue hb = weil_height(b);
  const HeightValue ha = weil_height(preperiodic_orbit(N).generator());
  out.lhs = lhs;
  out.rhs = hb.value + ha.value;
  out.gap = std::fabs(out.lhs - out.rhs);
  out.error = err + hb.error + ha.error + std::fabs(lhs) * 0x1p-48;
  out.places = std::move(places);
  out.unfactored = pf.cofactor;
  return out;
}

DiscrepancyRecord discrepancy(std::uint64_t N, const Rat& b, const Place& v, const DiscrepancyConstants& k) {
  if (!(k.delta > 0 && k.delta < 0.5)) throw DomainError("delta must lie in (0, 1/2)");
  DiscrepancyRecord r;
  r.orbit_n = N;
  r.orbit_size = orbit_size(N);
  r.place = v;
  const double size = static_cast<double>(r.orbit_size);
  double log_plus_b = 0.0;
  if (v.is_archimedean()) {
    const OrbitSum s = arch_orbit_sum(N, b);
    r.orbit_average = s.sum / size;
    r.max_lambda = s.max;
    r.integral_value = lambda_integral(b.get_d());
    log_plus_b = log_plus(std::fabs(b.get_d()));
  } else {
    const FiniteSum f = finite_orbit_sum(N, b, v.prime());
    const double lp = log_abs(v.prime());
    r.orbit_average = f.valuation_sum.get_d() * lp / size;
    r.max_lambda = std::max(0.0, f.max_valuation.get_d()) * lp;
    // Good reduction: the canonical measure at p is the Gauss point, and lambda_p there vanishes.
    r.integral_value = 0.0;
    log_plus_b = std::max(0.0, -padic_valuation(b, v.prime()).to_double()) * lp;
  }
  r.discrepancy = std::fabs(r.orbit_average - r.integral_value);
  const double h = weil_height(b).value;
  r.bound_rhs = k.C / std::pow(size, k.delta) * std::sqrt(std::log(size)) * k.A * (h + log_plus_b + 1.0);
  r.hypothesis_rhs = k.A * (h + 1.0) * std::pow(size, 0.5 - k.delta);
  r.hypothesis_holds = r.max_lambda <= r.hypothesis_rhs;
  return r;
}

AzPairing az_pairing_estimate(const Rat& b, std::uint64_t n_max, int d) {
  if (is_preperiodic_rational(b)) throw DomainError("beta is preperiodic");
  AzPairing out;
  const HeightValue hphi = canonical_height(b, ChebMap(d), 1e-12);
  out.limit = hphi.value + lambda_integral_quadrature(b.get_d());
  out.limit_alt = weil_height(b).value + log_plus_integral();
  out.limit_error = hphi.error + 1e-10;
  for (std::uint64_t N = 1; N <= n_max; ++N) {
    AzTerm t;
    t.N = N;
    t.size = orbit_size(N);
    const double size = static_cast<double>(t.size);
    const OrbitSum s = arch_orbit_sum(N, b);
    // Every finite place together: sum_p v_p(F) log p = log|F|.
    t.total = s.sum / size + log_abs(psi_at(N, b)) / size;
    t.gap = std::fabs(t.total - out.limit);
    t.rate = (1.0 + 0.5 * std::log(size)) / std::sqrt(size);
    out.empirical_constant = std::max(out.empirical_constant, t.gap / t.rate);
    out.terms.push_back(t);
  }
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0 && y[i] > 0)) throw DomainError("log-log fit needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0) throw DomainError("degenerate abscissae in slope fit");
  return (n * sxy - sx * sy) / den;
}

}  // namespace chebdyn
