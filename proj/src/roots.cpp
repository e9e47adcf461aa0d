#include "chebdyn/roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>

namespace chebdyn {

namespace {

constexpr double kUnit = 0x1p-52;

double up(double x) { return x * (1.0 + 4 * kUnit) + std::numeric_limits<double>::denorm_min(); }

MpComplex cx(long bits) { return {MpReal(bits), MpReal(bits)}; }

MpComplex add(const MpComplex& a, const MpComplex& b) { return {a.re + b.re, a.im + b.im}; }
MpComplex sub(const MpComplex& a, const MpComplex& b) { return {a.re - b.re, a.im - b.im}; }

MpComplex mul(const MpComplex& a, const MpComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

MpComplex div(const MpComplex& a, const MpComplex& b) {
  MpReal d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

MpReal cabs(const MpComplex& z) { return hypot(z.re, z.im); }

struct Work {
  long bits;
  std::vector<MpReal> c;  // coefficients, low first
  std::vector<MpReal> abs_c;
  MpReal abs_lead;
  int n;
};

Work make_work(const IntPoly& f, long bits) {
  Work w{bits, {}, {}, MpReal(bits), f.degree()};
  for (const auto& a : f.coeffs()) {
    w.c.emplace_back(a, bits);
    w.abs_c.push_back(abs(w.c.back()));
  }
  w.abs_lead = w.abs_c.back();
  return w;
}

void horner(const Work& w, const MpComplex& z, MpComplex& fv, MpComplex& dv) {
  fv = {w.c.back(), MpReal(w.bits)};
  dv = cx(w.bits);
  for (int k = w.n - 1; k >= 0; --k) {
    dv = add(mul(dv, z), fv);
    fv = mul(fv, z);
    fv.re += w.c[static_cast<std::size_t>(k)];
  }
}

std::vector<MpComplex> initial_guesses(const IntPoly& f, long bits) {
  const int n = f.degree();
  // Fujiwara-style radius from log-magnitudes so huge coefficients cannot overflow.
  const double lead = log_abs(f.lead());
  double logr = -HUGE_VAL;
  for (int k = 1; k <= n; ++k) {
    const BigInt& a = f.coeffs()[static_cast<std::size_t>(n - k)];
    if (a == 0) continue;
    logr = std::max(logr, (log_abs(a) - lead) / k);
  }
  const double radius = std::isfinite(logr) ? std::exp(logr) : 1.0;
  std::vector<MpComplex> z;
  for (int k = 0; k < n; ++k) {
    const double ang = 2.0 * M_PI * k / n + 0.7;
    z.push_back({MpReal(radius * std::cos(ang), bits), MpReal(radius * std::sin(ang), bits)});
  }
  return z;
}

// Aberth-Ehrlich iteration with Gauss-Seidel updates.
void aberth(const Work& w, std::vector<MpComplex>& z) {
  const int n = w.n;
  const int max_iter = 200 + 20 * n;
  MpReal tol(1.0, w.bits);
  mpfr_mul_2si(tol.get(), tol.get(), -(w.bits - 6), MPFR_RNDN);
  MpReal one(1.0, w.bits);
  MpComplex fv = cx(w.bits), dv = cx(w.bits);
  for (auto& zi : z) {
    mpfr_prec_round(zi.re.get(), w.bits, MPFR_RNDN);
    mpfr_prec_round(zi.im.get(), w.bits, MPFR_RNDN);
  }
  for (int iter = 0; iter < max_iter; ++iter) {
    bool converged = true;
    for (int k = 0; k < n; ++k) {
      auto& zk = z[static_cast<std::size_t>(k)];
      horner(w, zk, fv, dv);
      if (fv.re.is_zero() && fv.im.is_zero()) continue;
      if (dv.re.is_zero() && dv.im.is_zero()) {
        zk.re += MpReal(1e-3, w.bits);
        converged = false;
        continue;
      }
      MpComplex ratio = div(fv, dv);
      MpComplex s = cx(w.bits);
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        MpComplex d = sub(zk, z[static_cast<std::size_t>(j)]);
        if (d.re.is_zero() && d.im.is_zero()) continue;
        s = add(s, div({one, MpReal(w.bits)}, d));
      }
      MpComplex denom = sub({one, MpReal(w.bits)}, mul(ratio, s));
      MpComplex step = (denom.re.is_zero() && denom.im.is_zero()) ? ratio : div(ratio, denom);
      zk = sub(zk, step);
      MpReal scale = cabs(zk);
      if (scale < one) scale = one;
      if (cabs(step) > tol * scale) converged = false;
    }
    if (converged) return;
  }
}

// Weierstrass inclusion radii, inflated to cover the rounding in their own evaluation.
std::optional<std::vector<MpRoot>> certify(const Work& w, const std::vector<MpComplex>& z) {
  const int n = w.n;
  MpReal u(1.0, w.bits);
  mpfr_mul_2si(u.get(), u.get(), 1 - w.bits, MPFR_RNDN);
  const MpReal nn(static_cast<double>(n), w.bits);
  const MpReal horner_slack = MpReal(static_cast<double>(4 * n + 8), w.bits) * u;
  const MpReal inflate = MpReal(1.0, w.bits) + MpReal(static_cast<double>(8 * n + 8), w.bits) * u;
  std::vector<MpRoot> out;
  MpComplex fv = cx(w.bits), dv = cx(w.bits);
  for (int i = 0; i < n; ++i) {
    const auto& zi = z[static_cast<std::size_t>(i)];
    horner(w, zi, fv, dv);
    MpReal r = cabs(zi);
    MpReal s = w.abs_c.back();
    for (int k = n - 1; k >= 0; --k) s = s * r + w.abs_c[static_cast<std::size_t>(k)];
    MpReal num = cabs(fv) + horner_slack * s;
    MpReal prod = w.abs_lead;
    for (int j = 0; j < n; ++j) {
      if (j != i) prod *= cabs(sub(zi, z[static_cast<std::size_t>(j)]));
    }
    if (prod.is_zero()) return std::nullopt;
    out.push_back({zi, nn * num / prod * inflate});
  }
  const MpReal shrink = MpReal(1.0, w.bits) - MpReal(8.0, w.bits) * u;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& a = out[static_cast<std::size_t>(i)];
      const auto& b = out[static_cast<std::size_t>(j)];
      if (!(cabs(sub(a.center, b.center)) * shrink > a.radius + b.radius)) return std::nullopt;
    }
  }
  return out;
}

bool disks_meet(const MpComplex& a, const MpReal& ra, const MpComplex& b, const MpReal& rb) {
  return !(cabs(sub(a, b)) > ra + rb);
}

// Real coefficients: a disk whose mirror image meets no other disk holds a real root,
// and a non-real disk's mirror partner holds the conjugate root.
void use_symmetry(std::vector<MpRoot>& roots) {
  const std::size_t n = roots.size();
  std::vector<bool> done(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    MpComplex mirror{roots[i].center.re, -roots[i].center.im};
    std::vector<std::size_t> hits;
    for (std::size_t j = 0; j < n; ++j) {
      if (disks_meet(mirror, roots[i].radius, roots[j].center, roots[j].radius)) hits.push_back(j);
    }
    if (hits.size() != 1) continue;
    const std::size_t j = hits[0];
    if (j == i) {
      roots[i].center.im = MpReal(roots[i].center.im.prec());
    } else {
      // Keep whichever of the pair has the tighter disk and mirror it onto the other.
      const std::size_t keep = roots[i].radius <= roots[j].radius ? i : j;
      const std::size_t other = keep == i ? j : i;
      roots[other].center = {roots[keep].center.re, -roots[keep].center.im};
      roots[other].radius = roots[keep].radius;
      done[j] = true;
    }
    done[i] = true;
  }
}

void order(std::vector<MpRoot>& roots) {
  std::sort(roots.begin(), roots.end(), [](const MpRoot& a, const MpRoot& b) {
    if (a.center.re != b.center.re) return a.center.re < b.center.re;
    return a.center.im < b.center.im;
  });
}

void check_input(const IntPoly& f) {
  if (f.degree() < 1) throw DomainError("root finding needs a polynomial of positive degree");
  if (!is_squarefree(f)) throw DomainError("root finding needs a squarefree polynomial");
}

std::optional<std::vector<MpRoot>> solve_at(const IntPoly& f, long bits, std::vector<MpComplex>& z) {
  Work w = make_work(f, bits);
  aberth(w, z);
  auto roots = certify(w, z);
  if (roots) {
    use_symmetry(*roots);
    order(*roots);
  }
  return roots;
}

ApproxComplex to_double_ball(const MpRoot& r) {
  ApproxComplex out;
  out.value = {r.center.re.to_double(), r.center.im.to_double()};
  MpReal dre = abs(r.center.re - MpReal(out.value.real(), 64));
  MpReal dim = abs(r.center.im - MpReal(out.value.imag(), 64));
  out.error = up(up(r.radius.to_double()) + up(dre.to_double()) + up(dim.to_double()));
  return out;
}

}  // namespace

ApproxReal approx(const Rat& q) {
  ApproxReal r;
  r.value = q.get_d();
  Rat back(r.value);
  r.error = up(std::fabs(Rat(q - back).get_d()));
  if (Rat(r.value) == q) r.error = 0.0;
  return r;
}

ApproxComplex to_complex(const ApproxReal& x) { return {{x.value, 0.0}, x.error}; }

ApproxReal operator+(const ApproxReal& a, const ApproxReal& b) {
  double v = a.value + b.value;
  return {v, up(a.error + b.error + std::fabs(v) * kUnit)};
}

ApproxReal operator-(const ApproxReal& a, const ApproxReal& b) {
  double v = a.value - b.value;
  return {v, up(a.error + b.error + std::fabs(v) * kUnit)};
}

ApproxReal operator*(const ApproxReal& a, const ApproxReal& b) {
  double v = a.value * b.value;
  double e = std::fabs(a.value) * b.error + std::fabs(b.value) * a.error + a.error * b.error;
  return {v, up(e + std::fabs(v) * kUnit)};
}

ApproxComplex operator+(const ApproxComplex& a, const ApproxComplex& b) {
  auto v = a.value + b.value;
  return {v, up(a.error + b.error + std::abs(v) * 2 * kUnit)};
}

ApproxComplex operator-(const ApproxComplex& a, const ApproxComplex& b) {
  auto v = a.value - b.value;
  return {v, up(a.error + b.error + std::abs(v) * 2 * kUnit)};
}

ApproxComplex operator*(const ApproxComplex& a, const ApproxComplex& b) {
  auto v = a.value * b.value;
  double e = std::abs(a.value) * b.error + std::abs(b.value) * a.error + a.error * b.error;
  // Complex products carry up to sqrt(5) u relative error; round up generously.
  return {v, up(e + std::abs(a.value) * std::abs(b.value) * 4 * kUnit)};
}

long default_precision_ceiling() {
  static const long bits = [] {
    const char* env = std::getenv("CHEB_PRECISION_BITS");
    if (env == nullptr) return 256L;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 64) return 256L;
    return v;
  }();
  return bits;
}

std::vector<MpRoot> complex_roots_mp(const IntPoly& f, long bits) {
  check_input(f);
  bits = std::max(bits, 64L);
  std::vector<MpComplex> z = initial_guesses(f, 64);
  std::optional<std::vector<MpRoot>> roots;
  for (long b = 64;; b = std::min(2 * b, bits)) {
    roots = solve_at(f, b, z);
    if (b == bits) break;
  }
  if (!roots) throw ConvergenceError("root disks could not be separated", std::nan(""), HUGE_VAL);
  return *roots;
}

std::vector<ApproxComplex> complex_roots(const IntPoly& f, double precision, long max_bits) {
  check_input(f);
  if (f.degree() == 1) {
    Rat q = make_rat(-f.coeff(0), f.coeff(1));
    ApproxReal r = approx(q);
    if (r.error > precision) throw ConvergenceError("requested precision below double resolution", r.value, r.error);
    return {to_complex(r)};
  }
  max_bits = std::max(max_bits, 64L);
  std::vector<MpComplex> z = initial_guesses(f, 64);
  double best = HUGE_VAL;
  for (long bits = 64;; bits = std::min(2 * bits, max_bits)) {
    auto roots = solve_at(f, bits, z);
    if (roots) {
      std::vector<ApproxComplex> out;
      double worst = 0.0;
      for (const auto& r : *roots) {
        out.push_back(to_double_ball(r));
        worst = std::max(worst, out.back().error);
      }
      best = std::min(best, worst);
      if (worst <= precision) return out;
    }
    if (bits == max_bits) break;
  }
  throw ConvergenceError("complex roots not certified at the precision ceiling", std::nan(""), best);
}

}  // namespace chebdyn
