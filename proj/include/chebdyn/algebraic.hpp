#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chebdyn/int_poly.hpp"
#include "chebdyn/roots.hpp"

namespace chebdyn {

// Degree cap for user-supplied algebraic numbers (irreducibility and embeddings).
inline constexpr int kMaxUserDegree = 16;

// Irreducibility over Q for f of degree <= kMaxUserDegree, by testing
// every conjugation-closed subset of at most deg/2 complex roots as a candidate
// factor and confirming with exact division. Throws DomainError above the cap.
bool is_irreducible(const IntPoly& f);

// An algebraic number: an irreducible primitive minimal
// polynomial with positive leading coefficient, plus one chosen complex embedding.
class AlgebraicNumber {
 public:
  // Validates irreducibility (degree <= kMaxUserDegree) and computes the embeddings.
  // `embedding` indexes the deterministic root order of complex_roots.
  static AlgebraicNumber from_minpoly(const IntPoly& f, int embedding = 0);
  // For minimal polynomials known to be irreducible with conjugates from a closed form;
  // no degree cap applies. `order` records N when the number is 2cos(2 pi a / N).
  static AlgebraicNumber trusted(IntPoly f, std::vector<ApproxComplex> conjugates, int embedding = 0,
                                 std::optional<std::uint64_t> order = std::nullopt);
  static AlgebraicNumber rational(const Rat& q);

  const IntPoly& minpoly() const { return minpoly_; }
  int degree() const { return minpoly_.degree(); }
  int embedding() const { return embedding_; }
  const ApproxComplex& value() const { return conjugates_[static_cast<std::size_t>(embedding_)]; }
  const std::vector<ApproxComplex>& conjugates() const { return conjugates_; }
  bool is_rational() const { return degree() == 1; }
  Rat as_rational() const;
  const std::optional<std::uint64_t>& known_order() const { return order_; }

 private:
  AlgebraicNumber() = default;
  IntPoly minpoly_;
  std::vector<ApproxComplex> conjugates_;
  int embedding_ = 0;
  std::optional<std::uint64_t> order_;
};

// Norm_{Q(b)/Q}(g(b)) for b a root of the irreducible f: Res(g, f) / lead(f)^deg(g).
Rat norm_at_root(const IntPoly& g, const IntPoly& f);

}  // namespace chebdyn
