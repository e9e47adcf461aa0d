#include "chebdyn/heights.hpp"

#include <cmath>
#include <limits>

#include "chebdyn/mp_real.hpp"

namespace chebdyn {

namespace {

constexpr double kRel = 8 * 0x1p-53;
constexpr int kMaxSteps = 400;
const double kLog2 = std::log(2.0);

struct Tail {
  double log_abs;  // log+|y|
  double bound;    // |G(y) - log+|y||
};

// Real y: the orbit of a point of [-2, 2] stays there, so G vanishes exactly.
Tail tail_rational(const Rat& y) {
  const Rat a = abs(y);
  if (a <= 2) return {0.0, 0.0};
  const double l = log_abs(y);
  if (a >= 3) {
    const double m = Rat(a - 1).get_d();
    return {l, 2.0 / (m * m)};
  }
  return {l, kLog2};
}

// Interval [lo, hi] of |y| with lo > 2, mapped through |T_d| = T_d on [2, inf) using
// T_d(w + 1/w) = w^d + w^-d, which is increasing in w >= 1.
void step_interval(MpReal& lo, MpReal& hi, int d) {
  auto image = [d](const MpReal& y, mpfr_rnd_t rnd, mpfr_rnd_t anti) {
    const mpfr_prec_t p = y.prec();
    MpReal t(p), w(p), wd(p), inv(p), out(p);
    mpfr_sqr(t.get(), y.get(), rnd);
    mpfr_sub_ui(t.get(), t.get(), 4, rnd);
    mpfr_sqrt(t.get(), t.get(), rnd);
    mpfr_add(w.get(), y.get(), t.get(), rnd);
    mpfr_div_2ui(w.get(), w.get(), 1, rnd);
    mpfr_pow_ui(wd.get(), w.get(), static_cast<unsigned long>(d), rnd);
    MpReal wd_anti(p);
    mpfr_pow_ui(wd_anti.get(), w.get(), static_cast<unsigned long>(d), anti);
    mpfr_ui_div(inv.get(), 1, wd_anti.get(), rnd);
    mpfr_add(out.get(), wd.get(), inv.get(), rnd);
    return out;
  };
  MpReal nlo = image(lo, MPFR_RNDD, MPFR_RNDU);
  MpReal nhi = image(hi, MPFR_RNDU, MPFR_RNDD);
  lo = std::move(nlo);
  hi = std::move(nhi);
}

double log_down(const MpReal& x) {
  MpReal t(x.prec());
  mpfr_log(t.get(), x.get(), MPFR_RNDD);
  return mpfr_get_d(t.get(), MPFR_RNDD);
}

double log_up(const MpReal& x) {
  MpReal t(x.prec());
  mpfr_log(t.get(), x.get(), MPFR_RNDU);
  return mpfr_get_d(t.get(), MPFR_RNDU);
}

// Complex ball with an MPFR center.
struct Ball {
  MpComplex c;
  MpReal r;
};

MpReal ulp_scale(mpfr_prec_t p, int extra) {
  MpReal u(1.0, p);
  mpfr_mul_2si(u.get(), u.get(), extra - static_cast<long>(p), MPFR_RNDU);
  return u;
}

MpReal magnitude(const MpComplex& z) { return hypot(z.re, z.im); }

Ball operator-(const Ball& a, const Ball& b) {
  MpComplex c{a.c.re - b.c.re, a.c.im - b.c.im};
  MpReal r = a.r + b.r + magnitude(c) * ulp_scale(c.re.prec(), 2);
  return {std::move(c), std::move(r)};
}

Ball operator*(const Ball& a, const Ball& b) {
  MpComplex c{a.c.re * b.c.re - a.c.im * b.c.im, a.c.re * b.c.im + a.c.im * b.c.re};
  const MpReal ma = magnitude(a.c), mb = magnitude(b.c);
  MpReal r = ma * b.r + mb * a.r + a.r * b.r + ma * mb * ulp_scale(c.re.prec(), 3);
  return {std::move(c), std::move(r)};
}

struct LocalEstimate {
  double value;
  double error;
  bool converged;
};

// Escape rate G(z) = lim log+|T_d^n(z)| / d^n for one conjugate ball.
LocalEstimate escape_rate(Ball z, int d, double tol) {
  const mpfr_prec_t p = z.c.re.prec();
  const Ball two{{MpReal(2.0, p), MpReal(p)}, MpReal(p)};
  double scale = 1.0, prev = std::numeric_limits<double>::quiet_NaN();
  LocalEstimate best{0.0, HUGE_VAL, false};
  for (int n = 0; n < kMaxSteps; ++n) {
    const MpReal m = magnitude(z.c);
    const double mc = m.to_double();
    const double rr = z.r.to_double() * (1 + kRel);
    const bool real = z.c.im.is_zero();
    double est, bound;
    if (real && mc + rr <= 2.0) {
      est = 0.0;
      bound = 0.0;
    } else {
      const double lo = std::max(0.0, mc - rr), hi = mc + rr;
      if (rr > 0.1 * std::max(1.0, mc)) break;  // precision exhausted
      const double l = m.log_abs();
      const double spread = std::log(std::max(1.0, hi)) - std::log(std::max(1.0, lo));
      const double tail = lo >= 3.0 ? 2.0 / ((lo - 1) * (lo - 1)) : kLog2;
      est = std::max(0.0, l) * scale;
      bound = (tail + spread) * scale + std::fabs(est) * kRel;
    }
    if (bound < best.error) best = {est, bound, false};
    if (n >= 1 && std::fabs(est - prev) < tol && bound < tol) return {est, bound, true};
    if (bound == 0.0) return {est, 0.0, true};
    prev = est;
    z = cheb_ladder<Ball>(static_cast<std::uint64_t>(d), z, two);
    scale /= d;
  }
  return best;
}

}  // namespace

std::string to_string(HeightMethod m) {
  switch (m) {
    case HeightMethod::ExactRational:
      return "exact-rational";
    case HeightMethod::MahlerNumeric:
      return "mahler-numeric";
    case HeightMethod::IterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

HeightValue weil_height(const Rat& x) {
  const BigInt& r = x.get_num();
  const BigInt& s = x.get_den();
  const BigInt m = abs(r) > s ? BigInt(abs(r)) : s;
  const double v = m == 1 ? 0.0 : log_abs(m);
  return {v, v * kRel, HeightMethod::ExactRational};
}

HeightValue weil_height(const AlgebraicNumber& b) {
  if (b.is_rational()) return weil_height(b.as_rational());
  const double D = b.degree();
  double sum = log_abs(b.minpoly().lead());
  double err = 0.0;
  for (const auto& z : b.conjugates()) {
    const double a = std::abs(z.value);
    if (a > 1.0) sum += std::log(a);
    // log+ is 1-Lipschitz.
    err += z.error;
  }
  return {sum / D, (err + std::fabs(sum) * kRel) / D, HeightMethod::MahlerNumeric};
}

HeightValue weil_height(const IntPoly& minpoly) { return weil_height(AlgebraicNumber::from_minpoly(minpoly)); }

HeightValue canonical_height(const Rat& x, const ChebMap& map, double tol) {
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  const int d = map.degree();
  Rat y = x;
  double scale = 1.0, prev = std::numeric_limits<double>::quiet_NaN();
  HeightValue best{0.0, HUGE_VAL, HeightMethod::ExactRational};
  int n = 0;
  for (; n < kMaxSteps; ++n) {
    if (bit_length(y.get_num()) > kExactIterationBits || bit_length(y.get_den()) > kExactIterationBits) break;
    const Tail t = tail_rational(y);
    const double logs = y.get_den() == 1 ? 0.0 : log_abs(y.get_den());
    const double est = (logs + t.log_abs) * scale;
    const double bound = t.bound * scale + est * kRel;
    if (bound < best.error) best = {est, bound, HeightMethod::ExactRational};
    if (n >= 1 && std::fabs(est - prev) < tol && bound < tol) return best;
    prev = est;
    y = map(y);
    scale /= d;
  }
  if (n < kMaxSteps) {
    // Interval phase. log s_n scales by exactly d per step, so its share is frozen;
    // |y_n| > 2 here, since otherwise the tail bound vanished and we returned above.
    const double frozen = log_abs(y.get_den()) * scale;
    const mpfr_prec_t p = 512;
    const Rat a = abs(y);
    MpReal lo(p), hi(p);
    mpfr_set_q(lo.get(), a.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.get(), a.get_mpq_t(), MPFR_RNDU);
    for (; n < kMaxSteps; ++n) {
      if (!(lo > MpReal(2.0, p))) break;
      const double llo = log_down(lo), lhi = log_up(hi);
      const double l = 0.5 * (llo + lhi);
      const double lo_d = mpfr_get_d(lo.get(), MPFR_RNDD);
      const double tail = lo_d >= 3.0 ? 2.0 / ((lo_d - 1) * (lo_d - 1)) : kLog2;
      const double est = frozen + l * scale;
      const double bound = (tail + (lhi - llo)) * scale + est * kRel;
      if (bound < best.error) best = {est, bound, HeightMethod::IterationLimit};
      if (std::fabs(est - prev) < tol && bound < tol) return best;
      prev = est;
      step_interval(lo, hi, d);
      scale /= d;
    }
  }
  throw ConvergenceError("canonical height did not reach the tolerance", best.value, best.error);
}

HeightValue canonical_height(const AlgebraicNumber& b, const ChebMap& map, double tol) {
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  if (b.is_rational()) return canonical_height(b.as_rational(), map, tol);
  const int D = b.degree();
  const int d = map.degree();
  const double lead = log_abs(b.minpoly().lead());
  // Conjugates known to be real points of [-2, 2] have bounded orbits: G = 0.
  std::vector<int> pending;
  for (int j = 0; j < D; ++j) {
    const auto& z = b.conjugates()[static_cast<std::size_t>(j)];
    if (!(z.value.imag() == 0.0 && std::fabs(z.value.real()) + z.error <= 2.0)) pending.push_back(j);
  }
  double sum = lead, err = std::fabs(lead) * kRel;
  if (!pending.empty()) {
    double best_err = HUGE_VAL, best_sum = sum;
    bool done = false;
    for (long bits = 128; !done && bits <= std::max(256L, default_precision_ceiling()); bits *= 2) {
      auto roots = complex_roots_mp(b.minpoly(), bits);
      double s = lead, e = err;
      bool ok = true;
      for (const auto& rt : roots) {
        Ball z{rt.center, rt.radius};
        auto g = escape_rate(z, d, tol * 0.5 / D);
        s += g.value;
        e += g.error;
        ok = ok && g.converged;
      }
      if (e < best_err) {
        best_err = e;
        best_sum = s;
      }
      done = ok && e / D < tol;
    }
    if (!done) throw ConvergenceError("canonical height did not reach the tolerance", best_sum / D, best_err / D);
    sum = best_sum;
    err = best_err;
  }
  return {sum / D, err / D, HeightMethod::MahlerNumeric};
}

double dobrowolski_floor(int D, double C) {
  if (D < 2) throw DomainError("Dobrowolski floor needs D >= 2");
  const double l = std::log(static_cast<double>(D));
  return C / (D * l * l * l);
}

}  // namespace chebdyn
