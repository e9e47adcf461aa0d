#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chebdyn {

using BigInt = mpz_class;
using Rat = mpq_class;  // canonical form: den > 0, gcd(num, den) = 1

// Input outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numeric procedure stopped before reaching the requested accuracy.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double best_bound)
      : std::runtime_error(what), best_estimate_(best_estimate), best_bound_(best_bound) {}
  double best_estimate() const { return best_estimate_; }
  double best_bound() const { return best_bound_; }

 private:
  double best_estimate_;
  double best_bound_;
};

Rat make_rat(const BigInt& num, const BigInt& den);

// Parses "p/q", "p" or a decimal-free integer; throws DomainError on malformed input.
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& q);
std::string to_string(const BigInt& n);

// Natural log of |n| for n != 0, accurate to a few ulps even for huge n.
double log_abs(const BigInt& n);
double log_abs(const Rat& q);

std::size_t bit_length(const BigInt& n);

// An element of Q ∪ {+inf}, used for p-adic valuations.
class Valuation {
 public:
  Valuation() : infinite_(true) {}
  Valuation(const Rat& v) : infinite_(false), value_(v) {}  // NOLINT(implicit)
  Valuation(long v) : infinite_(false), value_(v) {}        // NOLINT(implicit)

  static Valuation infinity() { return Valuation(); }

  bool is_infinite() const { return infinite_; }
  const Rat& value() const;
  double to_double() const;
  std::string to_string() const;

  friend bool operator==(const Valuation& a, const Valuation& b);
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);

 private:
  bool infinite_;
  Rat value_;
};

}  // namespace chebdyn
