#include "chebdyn/places.hpp"

#include <algorithm>
#include <cctype>

#include "chebdyn/factor.hpp"

namespace chebdyn {

Place Place::finite(const BigInt& p) {
  if (!is_prime(p)) throw DomainError("not a prime: " + p.get_str());
  Place v;
  v.p_ = p;
  return v;
}

const BigInt& Place::prime() const {
  if (is_archimedean()) throw DomainError("the archimedean place has no prime");
  return p_;
}

std::string Place::to_string() const { return is_archimedean() ? "inf" : p_.get_str(); }

std::strong_ordering operator<=>(const Place& a, const Place& b) {
  const int c = cmp(a.p_, b.p_);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

PlaceSet PlaceSet::parse(std::string_view text) {
  PlaceSet s;
  bool has_inf = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string token(text.substr(start, end - start));
    token.erase(std::remove_if(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c); }), token.end());
    if (token == "inf" || token == "infinity") {
      has_inf = true;
    } else {
      if (token.empty() || !std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); })) {
        throw DomainError("bad place token: '" + token + "'");
      }
      BigInt p(token);
      if (!is_prime(p)) throw DomainError("place token is not prime: " + token);
      s.primes_.push_back(p);
    }
    start = end + 1;
  }
  if (!has_inf) throw DomainError("place set must contain inf");
  std::sort(s.primes_.begin(), s.primes_.end());
  s.primes_.erase(std::unique(s.primes_.begin(), s.primes_.end()), s.primes_.end());
  return s;
}

PlaceSet PlaceSet::with_primes(const std::vector<BigInt>& primes) {
  PlaceSet s;
  for (const auto& p : primes) {
    if (!is_prime(p)) throw DomainError("not a prime: " + p.get_str());
    s.primes_.push_back(p);
  }
  std::sort(s.primes_.begin(), s.primes_.end());
  s.primes_.erase(std::unique(s.primes_.begin(), s.primes_.end()), s.primes_.end());
  return s;
}

bool PlaceSet::contains(const Place& v) const { return v.is_archimedean() || contains_prime(v.prime()); }

bool PlaceSet::contains_prime(const BigInt& p) const { return std::binary_search(primes_.begin(), primes_.end(), p); }

std::string PlaceSet::to_string() const {
  std::string out = "inf";
  for (const auto& p : primes_) out += "," + p.get_str();
  return out;
}

}  // namespace chebdyn
