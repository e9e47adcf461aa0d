#include "chebdyn/mp_real.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace chebdyn {

MpReal::MpReal(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

MpReal::MpReal(double v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

MpReal::MpReal(const BigInt& v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

MpReal::MpReal(const Rat& v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

MpReal::MpReal(const MpReal& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

MpReal::MpReal(MpReal&& o) noexcept {
  mpfr_init2(v_, o.prec());
  mpfr_swap(v_, o.v_);
}

MpReal& MpReal::operator=(const MpReal& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

MpReal& MpReal::operator=(MpReal&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

MpReal::~MpReal() { mpfr_clear(v_); }

void MpReal::widen_to(mpfr_prec_t p) {
  if (p > prec()) mpfr_prec_round(v_, p, MPFR_RNDN);
}

double MpReal::log_abs() const {
  if (is_zero()) return -HUGE_VAL;
  long e = 0;
  double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

std::string MpReal::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return buf.data();
}

MpReal MpReal::operator-() const {
  MpReal r(prec());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

MpReal& MpReal::operator+=(const MpReal& o) {
  widen_to(o.prec());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

MpReal& MpReal::operator-=(const MpReal& o) {
  widen_to(o.prec());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

MpReal& MpReal::operator*=(const MpReal& o) {
  widen_to(o.prec());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

MpReal& MpReal::operator/=(const MpReal& o) {
  widen_to(o.prec());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

std::partial_ordering operator<=>(const MpReal& a, const MpReal& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

namespace {

template <class F>
MpReal unary(const MpReal& x, F f) {
  MpReal r(x.prec());
  f(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace

MpReal abs(const MpReal& x) { return unary(x, mpfr_abs); }
MpReal sqrt(const MpReal& x) { return unary(x, mpfr_sqrt); }
MpReal log(const MpReal& x) { return unary(x, mpfr_log); }
MpReal exp(const MpReal& x) { return unary(x, mpfr_exp); }
MpReal cos(const MpReal& x) { return unary(x, mpfr_cos); }
MpReal sin(const MpReal& x) { return unary(x, mpfr_sin); }

MpReal hypot(const MpReal& x, const MpReal& y) {
  MpReal r(std::max(x.prec(), y.prec()));
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

MpReal atan2(const MpReal& y, const MpReal& x) {
  MpReal r(std::max(x.prec(), y.prec()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

MpReal mp_pi(mpfr_prec_t prec) {
  MpReal r(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

MpReal two_cos_rational_angle(long a, long n, mpfr_prec_t prec) {
  // cospi(2a/n) is not in MPFR 4.1, so reduce the angle by hand first.
  MpReal t = mp_pi(prec + 16);
  mpfr_mul_si(t.get(), t.get(), 2 * a, MPFR_RNDN);
  mpfr_div_si(t.get(), t.get(), n, MPFR_RNDN);
  MpReal c = cos(t);
  mpfr_mul_2ui(c.get(), c.get(), 1, MPFR_RNDN);
  mpfr_prec_round(c.get(), prec, MPFR_RNDN);
  return c;
}

}  // namespace chebdyn
