// chebdyn command-line front end. Every subcommand writes one JSON report
// (stdout unless --output) and optionally a CSV table (--csv). Exit status:
// 0 all checks pass, 2 some check failed, 1 bad usage or input.
#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>

#include "chebdyn/baker.hpp"
#include "chebdyn/chebyshev.hpp"
#include "chebdyn/equidistribution.hpp"
#include "chebdyn/harness.hpp"
#include "chebdyn/heights.hpp"
#include "chebdyn/integrality.hpp"
#include "chebdyn/report.hpp"

using namespace chebdyn;

namespace {

struct Common {
  std::string output;
  std::string csv;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json coeffs_json(const IntPoly& f) {
  Json a = Json::array();
  for (const auto& c : f.coeffs()) a.push_back(c.fits_slong_p() ? Json(c.get_si()) : json_big(c));
  return a;
}

Json primes_json(const std::map<BigInt, long>& m) {
  Json o = Json::object();
  for (const auto& [p, e] : m) o[p.get_str()] = e;
  return o;
}

Json height_json(const HeightValue& h) {
  return {{"value", json_number(h.value)}, {"error", json_number(h.error)}, {"method", to_string(h.method)}};
}

Rat require_rational(const AlgebraicNumber& b, const char* what) {
  if (!b.is_rational()) throw UsageError(std::string(what) + " needs a rational beta");
  return b.as_rational();
}

void emit(const Report& r, const Common& io, const CsvTable* table) {
  const std::string text = r.to_json().dump(2) + "\n";
  if (io.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(io.output);
    if (!f) throw UsageError("cannot write " + io.output);
    f << text;
  }
  if (table && !io.csv.empty()) {
    std::ofstream f(io.csv);
    if (!f) throw UsageError("cannot write " + io.csv);
    table->write(f);
  }
}

// ---- subcommands ----

Report run_orbit(std::uint64_t N) {
  Report r;
  r.config = {{"N", N}};
  const PreperiodicOrbit o = preperiodic_orbit(N);
  Json conj = Json::array();
  double worst = 0.0;
  for (const auto& c : o.conjugates) {
    conj.push_back(json_number(c.value));
    worst = std::max(worst, std::fabs(o.minpoly.eval(c.value)));
  }
  r.results = {{"N", N}, {"size", o.size}, {"minpoly", coeffs_json(o.minpoly)}, {"exponents", o.exponents},
               {"conjugates", conj}};
  r.check("degree_equals_orbit_size", o.minpoly.degree() == static_cast<int>(o.size), o.minpoly.degree(), o.size);
  r.check("monic", o.minpoly.lead() == 1, json_big(o.minpoly.lead()), 1);
  r.check("vanishes_at_conjugates", worst <= 1e-9, json_number(worst), 1e-9);
  return r;
}

Report run_cheb(int n, const std::string& x) {
  Report r;
  r.config = {{"n", n}, {"x", x}};
  const IntPoly T = cheb_poly(n);
  const Rat q = parse_rat(x);
  const Rat v = cheb_eval(static_cast<std::uint64_t>(n), q);
  r.results = {{"poly", coeffs_json(T)}, {"value", to_string(v)}};
  r.check("ladder_matches_polynomial", T.eval(q) == v, to_string(T.eval(q)), to_string(v));
  return r;
}

Report run_height(const std::string& beta) {
  Report r;
  r.config = {{"beta", beta}};
  const AlgebraicNumber b = parse_beta(beta);
  const HeightValue h = weil_height(b);
  r.results = {{"beta", describe(b)}, {"degree", b.degree()}, {"weilHeight", height_json(h)}};
  r.check("nonnegative", h.value + h.error >= 0, json_number(h.value), 0);
  return r;
}

Report run_canonical(const std::string& beta, int d, double tol) {
  Report r;
  r.config = {{"beta", beta}, {"d", d}, {"tol", tol}};
  const AlgebraicNumber b = parse_beta(beta);
  const ChebMap map(d);
  const HeightValue h = canonical_height(b, map, tol);
  r.results = {{"beta", describe(b)}, {"canonicalHeight", height_json(h)}, {"preperiodic", is_preperiodic(b)}};
  if (b.is_rational()) {
    const HeightValue h2 = canonical_height(map(b.as_rational()), map, tol);
    const double gap = std::fabs(h2.value - d * h.value);
    r.results["functionalEquationGap"] = json_number(gap);
    r.check("functional_equation", gap <= h2.error + d * h.error + 2 * tol, json_number(h2.value),
            json_number(d * h.value));
  }
  r.check("vanishes_iff_preperiodic", (h.value - h.error <= 0) == is_preperiodic(b), json_number(h.value),
          is_preperiodic(b));
  return r;
}

Report run_sintegral(const std::string& beta, std::uint64_t N, const std::string& places) {
  Report r;
  r.config = {{"beta", beta}, {"N", N}, {"S", places}};
  const PlaceSet S = PlaceSet::parse(places);
  const AlgebraicNumber b = parse_beta(beta);
  const SIntegralityReport rep = is_s_integral(N, b, S);
  r.results = {{"beta", rep.beta},
               {"N", N},
               {"isSIntegral", rep.is_s_integral},
               {"meetingPrimes", primes_json(rep.meeting.primes)},
               {"resultant", json_big(rep.meeting.resultant)},
               {"unfactored", json_big(rep.meeting.unfactored)},
               {"witness", rep.witness ? json_big(*rep.witness) : Json(nullptr)}};
  if (b.is_rational()) {
    // Second opinion from the Newton polygon of Psi_N(b - x) at each meeting prime.
    const IntPoly g = psi(N).reflected_shift(b.as_rational());
    bool agree = true;
    for (const auto& [p, e] : rep.meeting.primes) {
      const auto vals = newton_polygon_valuations(g, p);
      agree = agree && std::any_of(vals.begin(), vals.end(), [](const Valuation& v) { return v > Valuation(0L); });
    }
    r.check("newton_polygon_agrees", agree, agree, true);
  }
  return r;
}

Report run_scan(const std::string& beta, const std::string& places, std::uint64_t n_max, double c,
                CsvTable& table) {
  Report r;
  r.config = {{"beta", beta}, {"S", places}, {"Nmax", n_max}, {"thresholdC", c}};
  const PlaceSet S = PlaceSet::parse(places);
  const ScanResult sr = scan_s_integral_orbits(parse_beta(beta), S, n_max, c);
  Json orbits = Json::array();
  table.header = {"N", "size", "meeting_primes"};
  for (const auto& o : sr.orbits) {
    orbits.push_back({{"N", o.N}, {"size", o.size}, {"meetingPrimes", primes_json(o.meeting)}});
    std::string mp;
    for (const auto& [p, e] : o.meeting) mp += (mp.empty() ? "" : ";") + p.get_str() + "^" + std::to_string(e);
    table.rows.push_back({std::to_string(o.N), std::to_string(o.size), mp});
  }
  r.results = {{"sIntegralOrbits", orbits},
               {"exceptionalCount", sr.exceptional_count},
               {"threshold", json_number(sr.threshold)},
               {"lastNew", sr.last_new},
               {"sFin", sr.s_fin}};
  r.check("exceptional_count_at_most_s_fin", sr.count_ok, sr.exceptional_count, sr.s_fin);
  return r;
}

bool is_prime_small(std::uint64_t n) { return is_prime_u64(n); }

Report run_equidist(const std::string& beta, std::uint64_t n_min, std::uint64_t n_max, const std::string& place,
                    bool prime_only, const DiscrepancyConstants& k, double slope_max, CsvTable& table) {
  Report r;
  r.config = {{"beta", beta}, {"Nmin", n_min}, {"Nmax", n_max}, {"place", place}, {"primeOnly", prime_only},
              {"C", k.C}, {"delta", k.delta}, {"A", k.A}, {"slopeMax", slope_max},
              {"finitePlaceMeasure", "Gauss point (good reduction): integral of lambda_p taken as 0"}};
  const Rat b = require_rational(parse_beta(beta), "equidist");
  const Place v = place == "inf" ? Place::archimedean() : Place::finite(parse_rat(place).get_num());
  table.header = {"N", "size", "orbit_average", "integral", "discrepancy", "bound_rhs"};
  std::vector<double> xs, ys;
  double worst_ratio = 0.0, last = 0.0;
  for (std::uint64_t N = n_min; N <= n_max; ++N) {
    if (prime_only && !is_prime_small(N)) continue;
    if (psi_at(N, b) == 0) continue;
    const DiscrepancyRecord d = discrepancy(N, b, v, k);
    table.rows.push_back({std::to_string(N), std::to_string(d.orbit_size), csv_number(d.orbit_average),
                          csv_number(d.integral_value), csv_number(d.discrepancy), csv_number(*d.bound_rhs)});
    if (d.orbit_size >= 2 && d.discrepancy > 0) {
      xs.push_back(static_cast<double>(d.orbit_size));
      ys.push_back(d.discrepancy);
      worst_ratio = std::max(worst_ratio, d.discrepancy / (*d.bound_rhs / k.C));
    }
    last = d.discrepancy;
  }
  r.results = {{"rows", table.rows.size()}, {"lastDiscrepancy", json_number(last)},
               {"empiricalC", json_number(worst_ratio)}};
  if (xs.size() >= 2) {
    const double slope = loglog_slope(xs, ys);
    r.results["slope"] = json_number(slope);
    r.check("loglog_slope", slope <= slope_max, json_number(slope), slope_max);
  }
  return r;
}

Report run_baker(const std::string& beta, std::uint64_t n_max, double eps, double c_eps_override, bool proximity,
                 CsvTable& table) {
  Report r;
  r.config = {{"beta", beta}, {"Nmax", n_max}, {"eps", eps}};
  const AlgebraicNumber b = parse_beta(beta);
  if (proximity) {
    const double c = c_eps_override > 0 ? c_eps_override : 1.0;
    r.config["proximity"] = true;
    r.config["Ceps"] = c;
    const ProximityReport rep = proximity_bound_check(b, n_max, eps, c);
    table.header = {"N", "size", "proximity", "bound", "violation"};
    for (const auto& row : rep.rows) {
      table.rows.push_back({std::to_string(row.N), std::to_string(row.size), csv_number(row.proximity),
                            csv_number(row.bound), row.violation ? "1" : "0"});
    }
    r.results = {{"violations", rep.violations}, {"sandwichFailures", rep.sandwich_failures}};
    r.check("proximity_below_bound", rep.violations == 0, rep.violations, 0);
    r.check("elementary_sandwich", rep.sandwich_failures == 0, rep.sandwich_failures, 0);
    return r;
  }
  const UnitCirclePoint pt = unit_circle_point(b);
  const auto conv = angle_convergents(pt, BigInt(static_cast<unsigned long>(n_max)));
  const double expl = explicit_c_epsilon(pt, eps);
  const double cal = calibrated_c_epsilon(pt, conv, eps);
  const double c = c_eps_override > 0 ? c_eps_override : expl;
  r.config["Ceps"] = c;
  table.header = {"a", "N", "lhs", "lhs_error", "rhs", "holds", "baker_bound", "log_linear_form"};
  std::uint64_t viol = 0, chain = 0;
  for (const auto& cv : conv) {
    const CorollaryGap g = corollary_gap(pt, cv.a, cv.N, eps, c);
    viol += !g.holds;
    chain += !g.chain_holds;
    table.rows.push_back({cv.a.get_str(), cv.N.get_str(), csv_number(g.lhs), csv_number(g.lhs_error),
                          csv_number(g.rhs), g.holds ? "1" : "0", csv_number(g.baker_bound),
                          csv_number(g.log_linear_form)});
  }
  r.results = {{"theta0", json_number(pt.theta)},
               {"height", json_number(pt.height)},
               {"degree", pt.degree},
               {"convergents", conv.size()},
               {"explicitCeps", json_number(expl)},
               {"calibratedCeps", json_number(cal)},
               {"violations", viol}};
  r.check("no_violation", viol == 0, viol, 0);
  r.check("linear_form_chain", chain == 0, chain, 0);
  r.check("calibrated_below_explicit", cal <= expl, json_number(cal), json_number(expl));
  return r;
}

Report run_cor33(const std::string& beta, std::uint64_t p, std::uint64_t n_max) {
  Report r;
  r.config = {{"beta", beta}, {"p", p}, {"Nmax", n_max}};
  const Rat b = require_rational(parse_beta(beta), "cor33");
  const NearPointReport rep = near_point_check(b, BigInt(static_cast<unsigned long>(p)), n_max);
  Json flagged = Json::array();
  for (const auto& o : rep.flagged_orbits) {
    flagged.push_back({{"N", o.N}, {"maxValuation", to_string(o.max_valuation)}, {"points", o.flagged},
                       {"pointsStrict", o.flagged_strict}});
  }
  r.results = {{"flaggedOrbits", flagged},
               {"flaggedPoints", rep.flagged_points},
               {"flaggedPointsStrict", rep.flagged_points_strict},
               {"threshold", "1/(p-1)"},
               {"strictThreshold", "2/(p-1)"}};
  r.check("at_most_one_point_at_valuation_ge_1/(p-1)", rep.holds(), rep.flagged_points, 1);
  r.check("at_most_one_point_at_valuation_gt_2/(p-1)", rep.holds_strict(), rep.flagged_points_strict, 1);
  return r;
}

Report run_theorem2(const std::string& places, int d_cap, double height_cap, std::uint64_t n_max, int trials,
                    std::uint64_t seed, double c, CsvTable& table) {
  Report r;
  r.config = {{"S", places}, {"Dcap", d_cap}, {"heightCap", height_cap}, {"Nmax", n_max},
              {"trials", trials}, {"seed", seed}, {"thresholdC", c}};
  ExperimentConstants k;
  k.threshold_c = c;
  const ExceptionalSummary s = exceptional_count_experiment(PlaceSet::parse(places), d_cap, height_cap, n_max, trials, seed, k);
  Json rows = Json::array();
  table.header = {"beta", "degree", "height", "s_integral_N", "exceptional", "max_size"};
  for (const auto& row : s.rows) {
    rows.push_back({{"beta", row.beta}, {"degree", row.degree}, {"height", json_number(row.height)},
                    {"sIntegralN", row.s_integral}, {"exceptional", row.exceptional}, {"maxSize", row.max_size}});
    std::string ns;
    for (auto n : row.s_integral) ns += (ns.empty() ? "" : ";") + std::to_string(n);
    table.rows.push_back({row.beta, std::to_string(row.degree), csv_number(row.height), ns,
                          std::to_string(row.exceptional), std::to_string(row.max_size)});
  }
  Json curve = Json::array(), dob = Json::array();
  for (auto [D, t] : s.threshold_curve) curve.push_back({{"D", D}, {"threshold", json_number(t)}});
  for (auto [D, f] : s.dobrowolski) dob.push_back({{"D", D}, {"floor", json_number(f)}});
  r.results = {{"rows", rows}, {"maxExceptional", s.max_exceptional}, {"sFin", s.s_fin},
               {"thresholdCurve", curve}, {"dobrowolskiFloor", dob}};
  r.check("exceptional_at_most_s_fin", s.pass, s.max_exceptional, s.s_fin);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chebyshev dynamics: preperiodic orbits, heights, S-integrality, equidistribution"};
  app.require_subcommand(1);
  Common io;
  auto common = [&io](CLI::App* s) {
    s->add_option("--output,-o", io.output, "JSON report path (default stdout)");
  };
  auto with_csv = [&io](CLI::App* s) { s->add_option("--csv", io.csv, "CSV table path"); };

  std::uint64_t N = 1, n_max = 100, n_min = 1, p = 2, seed = 1;
  int n = 1, d = 2, d_cap = 2, trials = 10;
  std::string beta = "3", x = "0", places = "inf", place = "inf";
  double tol = 1e-12, threshold_c = 1.0, eps = 0.5, c_eps = 0.0, slope_max = -0.4;
  double height_cap = std::log(100.0);
  bool prime_only = false, proximity = false;
  DiscrepancyConstants dk;

  auto* orbit = app.add_subcommand("orbit", "Galois orbit of 2cos(2 pi / N) and its minimal polynomial");
  orbit->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  auto* cheb = app.add_subcommand("cheb", "Chebyshev polynomial T_n and its value at a rational");
  cheb->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);
  cheb->add_option("--x", x);
  auto* height = app.add_subcommand("height", "Weil height");
  height->add_option("--beta", beta)->required();
  auto* canon = app.add_subcommand("canonical-height", "Canonical height for T_d");
  canon->add_option("--beta", beta)->required();
  canon->add_option("--d", d)->check(CLI::Range(2, 64));
  canon->add_option("--tol", tol)->check(CLI::PositiveNumber);
  auto* sint = app.add_subcommand("sintegral", "S-integrality of one orbit relative to beta");
  sint->add_option("--beta", beta)->required();
  sint->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  sint->add_option("--S", places);
  auto* scan = app.add_subcommand("scan", "S-integral orbits for N <= Nmax");
  scan->add_option("--beta", beta)->required();
  scan->add_option("--S", places);
  scan->add_option("--Nmax", n_max)->check(CLI::PositiveNumber);
  scan->add_option("--threshold-c", threshold_c)->check(CLI::PositiveNumber);
  auto* equi = app.add_subcommand("equidist", "Orbit averages of lambda against the canonical measure");
  equi->add_option("--beta", beta)->required();
  equi->add_option("--Nmin", n_min)->check(CLI::PositiveNumber);
  equi->add_option("--Nmax", n_max)->check(CLI::PositiveNumber);
  equi->add_option("--place", place);
  equi->add_flag("--prime-only", prime_only);
  equi->add_option("--C", dk.C);
  equi->add_option("--delta", dk.delta);
  equi->add_option("--A", dk.A);
  equi->add_option("--slope-max", slope_max);
  auto* baker = app.add_subcommand("baker", "Angle approximation bound for a unit-circle point, or --proximity");
  baker->add_option("--beta", beta)->required();
  baker->add_option("--Nmax", n_max)->check(CLI::PositiveNumber);
  baker->add_option("--eps", eps)->check(CLI::PositiveNumber);
  baker->add_option("--c-eps", c_eps, "constant (default: explicit constant, or 1 with --proximity)");
  baker->add_flag("--proximity", proximity, "archimedean proximity bound over orbits N <= Nmax");
  auto* cor33 = app.add_subcommand("cor33", "p-adically close orbit points");
  cor33->add_option("--beta", beta)->required();
  cor33->add_option("--p", p)->required();
  cor33->add_option("--Nmax", n_max)->check(CLI::PositiveNumber);
  auto* thm2 = app.add_subcommand("theorem2", "Exceptional orbit counts over random beta");
  thm2->add_option("--S", places);
  thm2->add_option("--Dcap", d_cap)->check(CLI::Range(1, 2));
  thm2->add_option("--height-cap", height_cap)->check(CLI::PositiveNumber);
  thm2->add_option("--Nmax", n_max)->check(CLI::PositiveNumber);
  thm2->add_option("--trials", trials)->check(CLI::PositiveNumber);
  thm2->add_option("--seed", seed);
  thm2->add_option("--threshold-c", threshold_c)->check(CLI::PositiveNumber);
  for (auto* s : {orbit, cheb, height, canon, sint, scan, equi, baker, cor33, thm2}) common(s);
  for (auto* s : {scan, equi, baker, thm2}) with_csv(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    CsvTable table;
    Report r;
    if (*orbit) r = run_orbit(N);
    if (*cheb) r = run_cheb(n, x);
    if (*height) r = run_height(beta);
    if (*canon) r = run_canonical(beta, d, tol);
    if (*sint) r = run_sintegral(beta, N, places);
    if (*scan) r = run_scan(beta, places, n_max, threshold_c, table);
    if (*equi) r = run_equidist(beta, n_min, n_max, place, prime_only, dk, slope_max, table);
    if (*baker) r = run_baker(beta, n_max, eps, c_eps, proximity, table);
    if (*cor33) r = run_cor33(beta, p, n_max);
    if (*thm2) r = run_theorem2(places, d_cap, height_cap, n_max, trials, seed, threshold_c, table);
    emit(r, io, table.header.empty() ? nullptr : &table);
    return r.all_pass() ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
