#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chebdyn/integrality.hpp"

namespace chebdyn {

// log|w| for b = w + 1/w with |w| >= 1; the logarithmic potential of the arcsine
// measure (1/pi) dx / sqrt(4 - x^2) on [-2, 2]. Zero on the segment.
double equilibrium_potential(std::complex<double> b);
// The same integral by adaptive Gauss-Kronrod in theta (x = 2cos theta).
// Accurate off the segment; the integrand is log-singular on it.
double equilibrium_potential_quadrature(std::complex<double> b, double tol = 1e-12);

// kappa = integral of log+|x| against the arcsine measure, cached after the first call.
double log_plus_integral();

// Integral of lambda_inf(x, b) d mu(x) = log+|b| + kappa - potential(b).
double lambda_integral(std::complex<double> b);
// The same integral straight from the definition of lambda, by quadrature.
double lambda_integral_quadrature(double b, double tol = 1e-12);

// Mean over the orbit of 2cos(2 pi / N) of lambda_v(x, b).
ApproxReal orbit_lambda_average(std::uint64_t N, const Rat& b, const Place& v);

struct LambdaIdentity {
  double lhs = 0.0;  // sum over places of the orbit averages of lambda
  double rhs = 0.0;  // h(b) + h(orbit generator)
  double gap = 0.0;
  double error = 0.0;      // numeric error bound on lhs - rhs
  std::vector<BigInt> places;  // finite places that contributed
  BigInt unfactored = 1;   // resultant cofactor summed without a Newton polygon
};

// Summing lambda over every place collapses (product formula) to the two heights.
LambdaIdentity total_lambda_identity_check(std::uint64_t N, const Rat& b, const FactorBudget& budget = {});

struct DiscrepancyConstants {
  double C = 1.0;
  double delta = 0.25;
  double A = 1.0;
};

struct DiscrepancyRecord {
  std::uint64_t orbit_n = 0;
  std::uint64_t orbit_size = 0;
  Place place = Place::archimedean();
  double orbit_average = 0.0;
  double integral_value = 0.0;
  double discrepancy = 0.0;
  std::optional<double> bound_rhs;
  double max_lambda = 0.0;        // largest lambda_v over the orbit
  double hypothesis_rhs = 0.0;    // A (h(b) + 1) |P|^(1/2 - delta)
  bool hypothesis_holds = false;  // max_lambda <= hypothesis_rhs
};

DiscrepancyRecord discrepancy(std::uint64_t N, const Rat& b, const Place& v, const DiscrepancyConstants& k = {});

struct AzTerm {
  std::uint64_t N = 0;
  std::uint64_t size = 0;
  double total = 0.0;  // sum over all places of the orbit averages
  double gap = 0.0;    // |total - limit|
  double rate = 0.0;   // (1 + log |P|^(1/2)) / |P|^(1/2)
};

struct AzPairing {
  double limit = 0.0;        // h_phi(b) + integral of lambda_inf (quadrature)
  double limit_alt = 0.0;    // h(b) + kappa, valid for rational |b| > 2
  double limit_error = 0.0;
  std::vector<AzTerm> terms;
  double empirical_constant = 0.0;  // max gap / rate over the terms
};

// Orbit totals use the exact resultant for the finite places, so nothing is factored.
AzPairing az_pairing_estimate(const Rat& b, std::uint64_t n_max, int d = 2);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace chebdyn
