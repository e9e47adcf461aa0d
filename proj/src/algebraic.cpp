#include "chebdyn/algebraic.hpp"

#include <cmath>

#include "chebdyn/resultant.hpp"

namespace chebdyn {

namespace {

bool is_square(const BigInt& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

// Rounds lead * prod (x - r_i) to an integer polynomial if every coefficient is
// close to an integer; nullopt otherwise.
std::optional<IntPoly> candidate_factor(const std::vector<ApproxComplex>& roots, const std::vector<int>& subset,
                                        const BigInt& lead) {
  std::vector<std::complex<double>> c{1.0};
  for (int idx : subset) {
    const auto& r = roots[static_cast<std::size_t>(idx)];
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= c[i] * r.value;
    }
    c = std::move(next);
  }
  const double l = lead.get_d();
  std::vector<BigInt> coeffs;
  for (const auto& z : c) {
    const double v = z.real() * l;
    const double slack = 0.25 + 1e-9 * std::fabs(v);
    if (std::fabs(z.imag() * l) > slack || std::fabs(v - std::nearbyint(v)) > slack) return std::nullopt;
    coeffs.emplace_back(std::nearbyint(v));
  }
  return IntPoly::primitive(std::move(coeffs));
}

bool divides(const IntPoly& g, const IntPoly& f) {
  if (g.degree() < 1) return false;
  try {
    f.exact_div(g);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

// Enumerates subsets of size k in lexicographic order, skipping ones that are not
// closed under the conjugation pairing.
bool search_subsets(const std::vector<ApproxComplex>& roots, const std::vector<int>& partner, const IntPoly& f,
                    int k, std::vector<int>& cur, int start) {
  if (static_cast<int>(cur.size()) == k) {
    for (int i : cur) {
      if (partner[static_cast<std::size_t>(i)] < 0) continue;
      bool found = false;
      for (int j : cur) found = found || j == partner[static_cast<std::size_t>(i)];
      if (!found) return false;
    }
    auto g = candidate_factor(roots, cur, f.lead());
    return g && divides(*g, f);
  }
  const int n = static_cast<int>(roots.size());
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    if (search_subsets(roots, partner, f, k, cur, i + 1)) return true;
    cur.pop_back();
  }
  return false;
}

}  // namespace

bool is_irreducible(const IntPoly& input) {
  const IntPoly f = input.primitive_part();
  const int n = f.degree();
  if (n < 1) return false;
  if (n > kMaxUserDegree) throw DomainError("irreducibility test limited to degree 16");
  if (n == 1) return true;
  if (n == 2) {
    BigInt disc = f.coeff(1) * f.coeff(1) - 4 * f.coeff(2) * f.coeff(0);
    return !is_square(disc);
  }
  if (f.coeff(0) == 0) return false;
  if (!is_squarefree(f)) return false;
  auto roots = complex_roots(f, 1e-9);
  // partner[i] = index of the complex conjugate root, -1 for real roots.
  std::vector<int> partner(roots.size(), -1);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].value.imag() == 0.0) continue;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j != i && roots[j].value == std::conj(roots[i].value)) partner[i] = static_cast<int>(j);
    }
  }
  std::vector<int> cur;
  for (int k = 1; k <= n / 2; ++k) {
    cur.clear();
    if (search_subsets(roots, partner, f, k, cur, 0)) return false;
  }
  return true;
}

AlgebraicNumber AlgebraicNumber::from_minpoly(const IntPoly& f, int embedding) {
  if (f.degree() < 1) throw DomainError("minimal polynomial must have positive degree");
  if (f.content() != 1) throw DomainError("minimal polynomial must be primitive");
  if (!is_irreducible(f)) throw DomainError("minimal polynomial is reducible: " + f.to_string());
  IntPoly g = f.primitive_part();
  auto roots = complex_roots(g, 1e-12);
  if (embedding < 0 || embedding >= g.degree()) throw DomainError("embedding index out of range");
  AlgebraicNumber a;
  a.minpoly_ = std::move(g);
  a.conjugates_ = std::move(roots);
  a.embedding_ = embedding;
  return a;
}

AlgebraicNumber AlgebraicNumber::trusted(IntPoly f, std::vector<ApproxComplex> conjugates, int embedding,
                                         std::optional<std::uint64_t> order) {
  if (static_cast<int>(conjugates.size()) != f.degree()) throw DomainError("conjugate count must equal the degree");
  if (embedding < 0 || embedding >= f.degree()) throw DomainError("embedding index out of range");
  AlgebraicNumber a;
  a.minpoly_ = f.primitive_part();
  a.conjugates_ = std::move(conjugates);
  a.embedding_ = embedding;
  a.order_ = order;
  return a;
}

AlgebraicNumber AlgebraicNumber::rational(const Rat& q) {
  AlgebraicNumber a;
  a.minpoly_ = IntPoly::linear_for(q);
  a.conjugates_ = {to_complex(approx(q))};
  return a;
}

Rat AlgebraicNumber::as_rational() const {
  if (!is_rational()) throw DomainError("algebraic number is not rational");
  return make_rat(-minpoly_.coeff(0), minpoly_.coeff(1));
}

Rat norm_at_root(const IntPoly& g, const IntPoly& f) {
  if (g.is_zero()) return 0;
  BigInt den;
  mpz_pow_ui(den.get_mpz_t(), f.lead().get_mpz_t(), static_cast<unsigned long>(g.degree()));
  return make_rat(resultant(g, f), den);
}

}  // namespace chebdyn
