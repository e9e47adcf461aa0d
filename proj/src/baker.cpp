#include "chebdyn/baker.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chebdyn/chebyshev.hpp"
#include "chebdyn/factor.hpp"
#include "chebdyn/heights.hpp"
#include "chebdyn/integrality.hpp"
#include "chebdyn/mp_real.hpp"

namespace chebdyn {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

Rat to_rat(const MpReal& x) {
  Rat q;
  mpfr_get_q(q.get_mpq_t(), x.get());
  return q;
}

bool is_root_of_unity(const IntPoly& f) {
  const auto D = static_cast<std::uint64_t>(f.degree());
  // phi(m) >= sqrt(m / 2), so m <= 2 D^2.
  for (std::uint64_t m = 1; m <= 2 * D * D + 2; ++m) {
    if (euler_phi(m) == D && cyclotomic(m) == f) return true;
  }
  return false;
}

double abs_d(const BigInt& x) { return std::fabs(x.get_d()); }

}  // namespace

BakerInstance make_baker_instance(int D1, double logA1, double logA2, const BigInt& b1, const BigInt& b2) {
  if (D1 < 1) throw DomainError("D1 must be positive");
  const double floor = 1.0 / D1;
  if (!(logA1 >= floor) || !(logA2 >= floor)) throw DomainError("log A_j must be at least 1/D1");
  if (b1 == 0 || b2 == 0) throw DomainError("b1 and b2 must be nonzero");
  BakerInstance inst{D1, logA1, logA2, b1, b2, 0.0};
  inst.B = abs_d(b1) / (D1 * logA2) + abs_d(b2) / (D1 * logA1);
  return inst;
}

double baker_lower_bound(const BakerInstance& inst) {
  if (inst.D1 < 1 || !(inst.logA1 >= 1.0 / inst.D1) || !(inst.logA2 >= 1.0 / inst.D1)) {
    throw DomainError("Baker instance violates its invariants");
  }
  const double d = inst.D1;
  const double m = std::max(10.0, std::log(inst.B));
  return -21600.0 * d * d * d * d * inst.logA1 * inst.logA2 * m * m;
}

UnitCirclePoint unit_circle_point(const AlgebraicNumber& beta, long bits) {
  if (is_root_of_unity(beta.minpoly())) throw DomainError("beta is a root of unity");
  const auto roots = complex_roots_mp(beta.minpoly(), bits);
  const MpRoot& r = roots[static_cast<std::size_t>(beta.embedding())];
  const MpReal mod = hypot(r.center.re, r.center.im);
  const double gap = std::fabs((mod - MpReal(1.0, bits)).to_double());
  const double rad = r.radius.to_double();
  if (gap > rad + std::ldexp(1.0, 8 - static_cast<int>(bits))) throw DomainError("beta is not on the unit circle");
  UnitCirclePoint pt{beta, beta.degree(), weil_height(beta).value, 0, 0, 0.0};
  MpReal theta = atan2(r.center.im, r.center.re);
  theta = theta / (mp_pi(bits) * MpReal(2.0, bits));
  // d(arg) <= radius / |beta| for a point within `radius` of the centre.
  MpReal err = r.radius / (mod - r.radius) / MpReal(kTwoPi * (1 - 1e-15), bits);
  MpReal ulp(1.0, bits);
  mpfr_mul_2si(ulp.get(), ulp.get(), 8 - bits, MPFR_RNDU);
  err = err + ulp;
  pt.theta_lo = to_rat(theta - err);
  pt.theta_hi = to_rat(theta + err);
  pt.theta = theta.to_double();
  return pt;
}

BakerInstance corollary_instance(const UnitCirclePoint& pt, const BigInt& a, const BigInt& N) {
  const double D = pt.degree;
  const double log_beta = kTwoPi * std::fabs(pt.theta);  // |log beta| on the principal branch
  const double logA2 = std::max({pt.height, log_beta / D, 1.0 / D});
  return make_baker_instance(pt.degree, 1.0 / D, logA2, a, -N);
}

CorollaryGap corollary_gap(const UnitCirclePoint& pt, const BigInt& a, const BigInt& N, double eps, double c_eps) {
  if (N == 0 || N == 1 || N == -1) throw DomainError("N must avoid 0 and +-1");
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), N.get_mpz_t());
  if (g != 1) throw DomainError("a and N must be coprime");
  if (!(eps > 0) || !(c_eps > 0)) throw DomainError("eps and C_eps must be positive");
  CorollaryGap out;
  out.a = a;
  out.N = N;
  const Rat q = make_rat(a, N);
  const double D = pt.degree;
  const double n = abs_d(N);
  out.rhs = -c_eps * D * D * D * pt.height * std::pow(n, eps);
  if (q >= pt.theta_lo && q <= pt.theta_hi) {
    // Within the enclosure; an exact hit would make beta a root of unity.
    out.equal = false;
    out.lhs = -HUGE_VAL;
    out.lhs_error = HUGE_VAL;
    out.holds = true;
  } else {
    const Rat near = abs(q - pt.theta_lo) < abs(q - pt.theta_hi) ? Rat(q - pt.theta_lo) : Rat(q - pt.theta_hi);
    const Rat far = abs(q - pt.theta_lo) < abs(q - pt.theta_hi) ? Rat(q - pt.theta_hi) : Rat(q - pt.theta_lo);
    const double lo = std::log(std::fabs(near.get_d())), hi = std::log(std::fabs(far.get_d()));
    out.lhs = 0.5 * (lo + hi);
    out.lhs_error = 0.5 * (hi - lo) + std::fabs(out.lhs) * 0x1p-50;
    out.holds = out.lhs + out.lhs_error >= out.rhs;
  }
  const BakerInstance inst = corollary_instance(pt, a, N);
  out.baker_bound = baker_lower_bound(inst);
  out.log_linear_form = out.lhs + std::log(kTwoPi * n);
  out.chain_holds = out.log_linear_form + out.lhs_error >= out.baker_bound;
  return out;
}

double explicit_c_epsilon(const UnitCirclePoint& pt, double eps) {
  if (!(eps > 0)) throw DomainError("eps must be positive");
  const double D = pt.degree;
  const double logA1 = 1.0 / D;
  const double logA2 = corollary_instance(pt, 1, 2).logA2;
  const double scale = D * D * D * pt.height;
  // With |a| <= N: B <= N (1/(D logA2) + 1).
  const double c = std::log(1.0 / (D * logA2) + 1.0);
  auto need = [&](double t) {
    const double m = std::max(10.0, t + c);
    const double baker = 21600.0 * D * D * D * D * logA1 * logA2 * m * m;
    return (baker + std::log(kTwoPi) + t) / (scale * std::exp(eps * t));
  };
  // Past t* = max(2/eps, 10) + 50 the ratio only decreases.
  const double t_end = std::max(2.0 / eps, 10.0) + 50.0;
  double best = 0.0;
  for (double t = std::log(2.0); t <= t_end; t += 1e-4) best = std::max(best, need(t));
  return best * (1 + 1e-6);
}

double calibrated_c_epsilon(const UnitCirclePoint& pt, const std::vector<Convergent>& conv, double eps) {
  const double D = pt.degree;
  double best = 0.0;
  for (const auto& c : conv) {
    const CorollaryGap g = corollary_gap(pt, c.a, c.N, eps, 1.0);
    if (!std::isfinite(g.lhs)) continue;
    const double need = -(g.lhs - g.lhs_error) / (D * D * D * pt.height * std::pow(abs_d(c.N), eps));
    best = std::max(best, need);
  }
  return best;
}

std::vector<Convergent> angle_convergents(const UnitCirclePoint& pt, const BigInt& n_max) {
  std::vector<Convergent> out;
  for (auto& c : cf_convergents(pt.theta_lo, pt.theta_hi, n_max).items) {
    if (c.N >= 2) out.push_back(c);
  }
  return out;
}

ProximityReport proximity_bound_check(const AlgebraicNumber& beta, std::uint64_t n_max, double eps, double c_eps) {
  if (is_preperiodic(beta)) throw DomainError("beta is preperiodic");
  ProximityReport rep;
  const double D = beta.degree();
  const double h = weil_height(beta).value;
  const double mag = std::abs(beta.value().value);
  const double mag_err = beta.value().error;
  for (std::uint64_t N = 1; N <= n_max; ++N) {
    ProximityRow row;
    row.N = N;
    row.size = orbit_size(N);
    const Proximity p = arch_proximity(N, beta);
    row.proximity = p.value;
    row.error = p.error;
    row.bound = c_eps * D * D * D * (h + 1.0) * std::pow(static_cast<double>(row.size), eps);
    row.violation = row.proximity - row.error >= row.bound;
    if (mag - mag_err > 2.0) {
      row.sandwich_checked = true;
      const double lo = -std::log(mag + mag_err + 2.0), hi = -std::log(mag - mag_err - 2.0);
      row.sandwich_ok = row.proximity + row.error >= lo && row.proximity - row.error <= hi;
    }
    if (row.violation) ++rep.violations;
    if (!row.sandwich_ok) ++rep.sandwich_failures;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace chebdyn
