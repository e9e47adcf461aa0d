#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "chebdyn/algebraic.hpp"
#include "chebdyn/places.hpp"

namespace chebdyn {

struct ExperimentConstants {
  double C = 1.0;
  double c_eps = 1.0;
  double eps = 0.5;
  double delta = 0.25;
  double A = 1.0;
  double dobrowolski_c = 0.25;
  double threshold_c = 1.0;  // exceptional orbits have size > threshold_c * D^12
};

struct ExperimentConfig {
  std::string beta = "3";
  PlaceSet S = PlaceSet::parse("inf");
  std::uint64_t n_max = 100;
  int d = 2;
  ExperimentConstants constants;
  std::uint64_t seed = 1;
  std::string output;
  void validate() const;  // DomainError on a bad field
};

// "p/q", "p", or "poly:c0,c1,...,cd[@k]" (k-th root in the deterministic root order).
AlgebraicNumber parse_beta(const std::string& text);
std::string describe(const AlgebraicNumber& b);

// Deterministic across platforms: raw mt19937_64 output with rejection sampling,
// no std::*_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);  // inclusive
  double unit();                                            // [0, 1)

 private:
  std::mt19937_64 gen_;
};

Rat random_rational(Rng& rng, std::int64_t bound);  // |num|, den <= bound, lowest terms

struct ScanOrbit {
  std::uint64_t N = 0;
  std::uint64_t size = 0;
  std::map<BigInt, long> meeting;  // all inside S by construction
};

struct ScanResult {
  std::vector<ScanOrbit> orbits;  // ascending N
  std::uint64_t n_max = 0;
  double threshold = 0.0;
  std::uint64_t exceptional_count = 0;  // orbits of size > threshold
  std::size_t s_fin = 0;
  bool count_ok = true;  // exceptional_count <= |S_fin|
  std::uint64_t last_new = 0;  // largest S-integral N found
  std::vector<std::uint64_t> ns() const;
};

// Exact sweep over N <= n_max. Rejects preperiodic beta.
ScanResult scan_s_integral_orbits(const AlgebraicNumber& b, const PlaceSet& S, std::uint64_t n_max,
                                  double threshold_c = 1.0);

// c D^12.
double exceptional_threshold(int D, double c);
// C / (D (log D)^3) (1 - 1/(N D^2.5)).
double dobrowolski_step(int D, double N, double C);

struct ExceptionalRow {
  std::string beta;
  int degree = 1;
  double height = 0.0;
  std::vector<std::uint64_t> s_integral;  // N with an S-integral orbit
  std::uint64_t exceptional = 0;
  std::uint64_t max_size = 0;
};

struct ExceptionalSummary {
  std::vector<ExceptionalRow> rows;
  std::size_t s_fin = 0;
  std::uint64_t max_exceptional = 0;
  bool pass = true;
  std::vector<std::pair<int, double>> threshold_curve;  // (D, c D^12)
  std::vector<std::pair<int, double>> dobrowolski;      // (D, C / (D (log D)^3)), D >= 2
};

// Samples rational and (when d_cap >= 2) quadratic non-preperiodic beta with
// Weil height <= height_cap and scans each.
ExceptionalSummary exceptional_count_experiment(const PlaceSet& S, int d_cap, double height_cap, std::uint64_t n_max,
                                    int trials, std::uint64_t seed, const ExperimentConstants& k = {});

}  // namespace chebdyn
