#pragma once

#include <mpfr.h>

#include <compare>
#include <string>

#include "chebdyn/bigint.hpp"

namespace chebdyn {

// RAII wrapper over mpfr_t. Binary operations round to the larger operand precision.
class MpReal {
 public:
  explicit MpReal(mpfr_prec_t prec = 128);
  MpReal(double v, mpfr_prec_t prec);
  MpReal(const BigInt& v, mpfr_prec_t prec);
  MpReal(const Rat& v, mpfr_prec_t prec);
  MpReal(const MpReal& o);
  MpReal(MpReal&& o) noexcept;
  MpReal& operator=(const MpReal& o);
  MpReal& operator=(MpReal&& o) noexcept;
  ~MpReal();

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // Natural log of |x| as a double, safe for magnitudes beyond the double range.
  double log_abs() const;
  std::string to_string(int digits = 20) const;

  MpReal operator-() const;
  MpReal& operator+=(const MpReal& o);
  MpReal& operator-=(const MpReal& o);
  MpReal& operator*=(const MpReal& o);
  MpReal& operator/=(const MpReal& o);

  friend MpReal operator+(MpReal a, const MpReal& b) { return a += b; }
  friend MpReal operator-(MpReal a, const MpReal& b) { return a -= b; }
  friend MpReal operator*(MpReal a, const MpReal& b) { return a *= b; }
  friend MpReal operator/(MpReal a, const MpReal& b) { return a /= b; }
  friend bool operator==(const MpReal& a, const MpReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const MpReal& a, const MpReal& b);

 private:
  void widen_to(mpfr_prec_t p);
  mpfr_t v_;
};

MpReal abs(const MpReal& x);
MpReal sqrt(const MpReal& x);
MpReal log(const MpReal& x);
MpReal exp(const MpReal& x);
MpReal cos(const MpReal& x);
MpReal sin(const MpReal& x);
MpReal hypot(const MpReal& x, const MpReal& y);
MpReal atan2(const MpReal& y, const MpReal& x);
MpReal mp_pi(mpfr_prec_t prec);
// 2cos(2*pi*a/n) at the given precision.
MpReal two_cos_rational_angle(long a, long n, mpfr_prec_t prec);

}  // namespace chebdyn
