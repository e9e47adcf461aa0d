#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "chebdyn/bigint.hpp"

namespace chebdyn {

// Limits for the Pollard-rho stage. Trial division always runs to kTrialDivisionBound.
struct FactorBudget {
  std::uint64_t rho_iterations = 4'000'000;  // per composite cofactor
};

inline constexpr std::uint32_t kTrialDivisionBound = 1'000'000;

struct PartialFactorization {
  std::map<BigInt, int> primes;  // prime -> exponent, fully certified
  BigInt cofactor = 1;           // unfactored part (> 1 only when the budget ran out)
  bool complete() const { return cofactor == 1; }
};

class FactorizationIncomplete : public std::runtime_error {
 public:
  explicit FactorizationIncomplete(PartialFactorization partial)
      : std::runtime_error("factorization budget exhausted"), partial_(std::move(partial)) {}
  const PartialFactorization& partial() const { return partial_; }

 private:
  PartialFactorization partial_;
};

// Primes up to kTrialDivisionBound, computed once.
const std::vector<std::uint32_t>& small_primes();

bool is_prime(const BigInt& n);
bool is_prime_u64(std::uint64_t n);

// Ascending multiset of prime factors of |n|. Throws DomainError for n = 0 and
// FactorizationIncomplete when the rho budget is exhausted.
std::vector<BigInt> factorize(const BigInt& n, const FactorBudget& budget = {});
PartialFactorization factorize_partial(const BigInt& n, const FactorBudget& budget = {});

// Smallest prime factor found within the budget, or 0 when none was found.
BigInt find_prime_factor(const BigInt& n, const FactorBudget& budget = {});

std::uint64_t euler_phi(std::uint64_t n);
int mobius(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n);

}  // namespace chebdyn
