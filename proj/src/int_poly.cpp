#include "chebdyn/int_poly.hpp"

#include <algorithm>
#include <sstream>

namespace chebdyn {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly IntPoly::primitive(std::vector<BigInt> coeffs) {
  IntPoly p(std::move(coeffs));
  return p.primitive_part();
}

IntPoly IntPoly::monomial(int degree, const BigInt& c) {
  std::vector<BigInt> v(static_cast<std::size_t>(degree) + 1, BigInt(0));
  v.back() = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::linear_for(const Rat& root) {
  return IntPoly(std::vector<BigInt>{-root.get_num(), root.get_den()});
}

BigInt IntPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

const BigInt& IntPoly::lead() const {
  if (is_zero()) throw DomainError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

BigInt IntPoly::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return {};
  BigInt g = content();
  if (lead() < 0) g = -g;
  std::vector<BigInt> v = coeffs_;
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(v));
}

IntPoly IntPoly::derivative() const {
  if (degree() <= 0) return {};
  std::vector<BigInt> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-() const {
  std::vector<BigInt> v = coeffs_;
  for (auto& c : v) c = -c;
  return IntPoly(std::move(v));
}

Rat IntPoly::eval(const Rat& x) const {
  if (is_zero()) return 0;
  BigInt h = eval_homogeneous(x.get_num(), x.get_den());
  BigInt den;
  mpz_pow_ui(den.get_mpz_t(), x.get_den().get_mpz_t(), static_cast<unsigned long>(degree()));
  return make_rat(h, den);
}

BigInt IntPoly::eval_homogeneous(const BigInt& r, const BigInt& s) const {
  if (is_zero()) return 0;
  // acc = sum_{k >= i} c_k r^(k-i) s^(deg-k); spow tracks s^(deg-i).
  BigInt acc = coeffs_.back();
  BigInt spow = 1;
  for (int k = degree() - 1; k >= 0; --k) {
    spow *= s;
    acc = acc * r + coeffs_[static_cast<std::size_t>(k)] * spow;
  }
  return acc;
}

double IntPoly::eval(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

std::complex<double> IntPoly::eval(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + it->get_d();
  return acc;
}

IntPoly IntPoly::reflected_shift(const Rat& beta) const {
  if (is_zero()) return {};
  const BigInt& r = beta.get_num();
  const BigInt& s = beta.get_den();
  // Horner on the homogenized form with X = r - s*x, Y = s.
  std::vector<BigInt> acc{coeffs_.back()};
  BigInt spow = 1;
  for (int k = degree() - 1; k >= 0; --k) {
    spow *= s;
    std::vector<BigInt> next(acc.size() + 1, BigInt(0));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i] += acc[i] * r;
      next[i + 1] -= acc[i] * s;
    }
    next[0] += coeffs_[static_cast<std::size_t>(k)] * spow;
    acc = std::move(next);
  }
  return IntPoly(std::move(acc));
}

IntPoly IntPoly::exact_div(const IntPoly& divisor) const {
  if (divisor.is_zero()) throw DomainError("division by the zero polynomial");
  if (is_zero()) return {};
  if (degree() < divisor.degree()) throw DomainError("inexact polynomial division");
  std::vector<BigInt> rem = coeffs_;
  const int dq = degree() - divisor.degree();
  std::vector<BigInt> q(static_cast<std::size_t>(dq) + 1);
  const BigInt& lc = divisor.lead();
  for (int i = dq; i >= 0; --i) {
    BigInt& top = rem[static_cast<std::size_t>(i + divisor.degree())];
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) throw DomainError("inexact polynomial division");
    BigInt c;
    mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    for (int j = 0; j <= divisor.degree(); ++j) {
      rem[static_cast<std::size_t>(i + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
    q[static_cast<std::size_t>(i)] = std::move(c);
  }
  for (const auto& c : rem) {
    if (c != 0) throw DomainError("inexact polynomial division");
  }
  return IntPoly(std::move(q));
}

IntPoly IntPoly::pseudo_remainder(const IntPoly& g) const {
  if (g.is_zero()) throw DomainError("pseudo-remainder by the zero polynomial");
  if (degree() < g.degree()) return *this;
  std::vector<BigInt> r = coeffs_;
  const int dg = g.degree();
  const BigInt& lc = g.lead();
  int e = degree() - dg + 1;
  for (int top = degree(); top >= dg; --top) {
    BigInt c = r[static_cast<std::size_t>(top)];
    // r <- lc * r - c * x^(top-dg) * g
    for (auto& x : r) x *= lc;
    for (int j = 0; j <= dg; ++j) r[static_cast<std::size_t>(top - dg + j)] -= c * g.coeffs_[static_cast<std::size_t>(j)];
    --e;
  }
  if (e > 0) {
    BigInt f;
    mpz_pow_ui(f.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(e));
    for (auto& x : r) x *= f;
  }
  return IntPoly(std::move(r));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> v(std::max(a.coeffs_.size(), b.coeffs_.size()), BigInt(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> v(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpz_addmul(v[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(v));
}

IntPoly operator*(const BigInt& c, const IntPoly& a) {
  std::vector<BigInt> v = a.coeffs_;
  for (auto& x : v) x *= c;
  return IntPoly(std::move(v));
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || k == 0) os << mag.get_str();
    if (k >= 1) os << "x";
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

std::vector<std::string> IntPoly::coeff_strings() const {
  std::vector<std::string> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.get_str());
  return out;
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  IntPoly x = a.primitive_part();
  IntPoly y = b.primitive_part();
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPoly r = x.pseudo_remainder(y).primitive_part();
    x = std::move(y);
    y = std::move(r);
  }
  return x.primitive_part();
}

bool is_squarefree(const IntPoly& f) {
  if (f.degree() <= 1) return !f.is_zero();
  return gcd(f, f.derivative()).degree() == 0;
}

}  // namespace chebdyn
