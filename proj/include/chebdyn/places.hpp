#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "chebdyn/bigint.hpp"

namespace chebdyn {

// The archimedean place or the p-adic place of Q.
class Place {
 public:
  static Place archimedean() { return Place(); }
  // Throws DomainError if p is not prime.
  static Place finite(const BigInt& p);

  bool is_archimedean() const { return p_ == 0; }
  const BigInt& prime() const;
  std::string to_string() const;

  friend bool operator==(const Place& a, const Place& b) { return a.p_ == b.p_; }
  // The archimedean place sorts first, then primes ascending.
  friend std::strong_ordering operator<=>(const Place& a, const Place& b);

 private:
  Place() = default;
  BigInt p_ = 0;
};

// Finite set of places that always contains the archimedean place.
class PlaceSet {
 public:
  PlaceSet() = default;  // {inf}
  // Comma list such as "inf,2,3". "inf" is mandatory; primes are validated.
  static PlaceSet parse(std::string_view text);
  static PlaceSet with_primes(const std::vector<BigInt>& primes);

  bool contains(const Place& v) const;
  bool contains_prime(const BigInt& p) const;
  // Finite primes, ascending.
  const std::vector<BigInt>& primes() const { return primes_; }
  std::size_t finite_count() const { return primes_.size(); }
  std::string to_string() const;

 private:
  std::vector<BigInt> primes_;
};

}  // namespace chebdyn
