// Acceptance suite: every criterion prints exactly one PASS/FAIL line with
// its wall time; the process exits with the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hahnev/hahn.hpp"
#include "hahnev/io.hpp"
#include "hahnev/nevanlinna.hpp"
#include "hahnev/parse.hpp"
#include "hahnev/series.hpp"
#include "hahnev/verify.hpp"
#include "support.hpp"

using namespace hahnev;
using testsup::Rng;

namespace {

struct Criterion {
  int id;
  std::string label;
  double budget_seconds;
  std::function<bool(std::string&)> body;
};

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// 1. D z^2 = (1+q) z + c for random (q, c), coefficients to 1e-12.
bool crit_operator_exactness(std::string& detail) {
  Rng rng(201);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    double mag = rng.uniform(0.2, 2.5);
    if (std::abs(mag - 1.0) < 0.05) mag += 0.1;
    HahnParams p{std::polar(mag, rng.uniform(0.0, 6.28)), rng.box(2.0)};
    RatFun d = hahn_diff(pow(RatFun::z(), 2), p);
    if (!d.den().is_constant()) return false;
    worst = std::max(worst, std::abs(d.num().coeff(1) - (1.0 + p.q)));
    worst = std::max(worst, std::abs(d.num().coeff(0) - p.c));
    worst = std::max(worst, std::abs(d.num().coeff(2)));
  }
  detail = "max coefficient error " + format_double(worst);
  return worst <= 1e-12;
}

// 2. hahn_iter == hahn_expand for k = 2,3,4 on 50 random functions, 1e-10.
bool crit_iterate_equivalence(std::string& detail) {
  Rng rng(202);
  int checked = 0;
  for (int i = 0; i < 50; ++i) {
    RatFun g = testsup::random_ratfun(rng, 5);
    HahnParams p{std::polar(rng.uniform(0.3, 0.8), rng.uniform(0.0, 6.28)),
                 rng.box(1.5)};
    for (int k = 2; k <= 4; ++k) {
      if (!approx_equal_coeffs(hahn_iter(g, k, p), hahn_expand(g, k, p), 1e-10)) {
        detail = "mismatch at function " + std::to_string(i) + ", k = " +
                 std::to_string(k);
        return false;
      }
      ++checked;
    }
  }
  detail = std::to_string(checked) + " pairs matched";
  return true;
}

// 3. Product rule and linearity as identities on 100 random pairs, 1e-10.
bool crit_product_rule(std::string& detail) {
  Rng rng(203);
  for (int i = 0; i < 100; ++i) {
    RatFun f = testsup::random_ratfun(rng, 4);
    RatFun g = testsup::random_ratfun(rng, 4);
    HahnParams p{std::polar(rng.uniform(0.3, 0.8), rng.uniform(0.0, 6.28)),
                 rng.box(1.5)};
    cplx alpha = rng.box(2.0), beta = rng.box(2.0);
    RatFun lin_lhs = hahn_diff(alpha * f + beta * g, p);
    RatFun lin_rhs = alpha * hahn_diff(f, p) + beta * hahn_diff(g, p);
    if (!approx_equal(lin_lhs, lin_rhs, 1e-10)) {
      detail = "linearity failed at pair " + std::to_string(i);
      return false;
    }
    RatFun prod_lhs = hahn_diff(f * g, p);
    RatFun prod_rhs =
        compose_affine(f, p.q, p.c) * hahn_diff(g, p) + g * hahn_diff(f, p);
    if (!approx_equal(prod_lhs, prod_rhs, 1e-10)) {
      detail = "product rule failed at pair " + std::to_string(i);
      return false;
    }
  }
  detail = "100 pairs";
  return true;
}

// 4. series_hahn matches hahn_diff pointwise for polynomials of degree <= 6.
bool crit_series_cross_check(std::string& detail) {
  Rng rng(204);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    HahnParams p{std::polar(rng.uniform(0.3, 0.8), rng.uniform(0.0, 6.28)),
                 rng.box(1.5)};
    cplx z0 = p.z0();
    Poly pc = testsup::random_poly(rng, rng.integer(1, 6));
    PowerSeries ds = series_hahn(series_of_poly(pc, z0, 6), p);
    RatFun dg = hahn_diff(RatFun(pc, Poly{1.0}), p);
    for (int j = 0; j < 20; ++j) {
      cplx w = std::polar(rng.uniform(0.05, 0.7), rng.uniform(0.0, 6.28));
      cplx lhs = ds.eval_w(w);
      cplx rhs = eval(dg, z0 + w).value();
      worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
  }
  detail = "max relative deviation " + format_double(worst);
  return worst <= 1e-9;
}

// 5. First fundamental theorem: sup over the grid of
//    |T(r, 1/(g-a)) - T(r, g)| <= 2.0 for 20 random pairs.
bool crit_first_ft(std::string& detail) {
  Rng rng(205);
  RadiusGrid grid{1.0, 1048576.0, 41};
  std::vector<double> radii = grid.radii();
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    RatFun g = testsup::random_tame_ratfun(rng, 5);
    cplx a = testsup::random_target_for(rng, g);
    RatFun inv = pow(g - a, -1);
    ProximityKernel mg(g, ExtValue::inf());
    ProximityKernel mi(inv, ExtValue::inf());
    auto pg = a_points(g, ExtValue::inf());
    auto pi = a_points(inv, ExtValue::inf());
    for (double r : radii) {
      double tg = mg(r).value, ti = mi(r).value;
      for (const PointMult& pm : pg)
        if (std::abs(pm.location) > kOriginTol && std::abs(pm.location) <= r)
          tg += pm.mult * std::log(r / std::abs(pm.location));
        else if (std::abs(pm.location) <= kOriginTol)
          tg += pm.mult * std::log(r);
      for (const PointMult& pm : pi)
        if (std::abs(pm.location) > kOriginTol && std::abs(pm.location) <= r)
          ti += pm.mult * std::log(r / std::abs(pm.location));
        else if (std::abs(pm.location) <= kOriginTol)
          ti += pm.mult * std::log(r);
      worst = std::max(worst, std::abs(ti - tg));
    }
  }
  detail = "sup deviation " + format_double(worst);
  return worst <= 2.0;
}

// 6. m(r, D^k g / g) / T(r, g) <= 0.02 at r = 2^20 and nonincreasing over the
//    top quarter, k <= 3, on the 20-function suite.
bool crit_lodl(std::string& detail) {
  RadiusGrid grid{};
  HahnParams p{0.5, 0.3};
  auto suite = testsup::regression_suite();
  for (std::size_t i = 0; i < suite.size(); ++i)
    for (int k = 1; k <= 3; ++k) {
      CheckReport rep = check_lodl(suite[i], p, k, grid);
      if (!rep.pass) {
        detail = "function " + std::to_string(i) + ", k = " + std::to_string(k) +
                 ": top ratio " + format_double(rep.rows.back().extra.at("ratio"));
        return false;
      }
    }
  detail = "20 functions x k in {1,2,3}";
  return true;
}

// 7. SMT slack >= 0 for r at or above the grid midpoint on the fixed suite.
bool crit_smt(std::string& detail) {
  RadiusGrid grid{};
  HahnParams p{0.5, 0.3};
  Rng rng(207);
  auto suite = testsup::regression_suite();
  for (std::size_t i = 0; i < suite.size(); ++i) {
    std::vector<ExtValue> targets;
    if (i == 0) {
      targets = {cplx(2.0), cplx(-2.0), ExtValue::inf()};  // g = z + 1/z
    } else {
      cplx a1 = testsup::random_target_for(rng, suite[i]);
      cplx a2 = testsup::random_target_for(rng, suite[i]);
      while (std::abs(a1 - a2) < 0.2) a2 = testsup::random_target_for(rng, suite[i]);
      targets = {a1, a2, ExtValue::inf()};
    }
    CheckReport rep = check_smt(suite[i], targets, p, grid);
    if (!rep.pass) {
      detail = "function " + std::to_string(i) + " failed";
      return false;
    }
  }
  detail = "20 functions, l = 3 targets each";
  return true;
}

// 8. Defect relation sums on the suite.
bool crit_defects(std::string& detail) {
  RadiusGrid grid{};
  HahnParams p{0.5, 0.3};
  Rng rng(208);
  auto suite = testsup::regression_suite();
  for (std::size_t i = 0; i < suite.size(); ++i) {
    cplx a1 = testsup::random_target_for(rng, suite[i]);
    CheckReport rep = check_defect_sum(suite[i], {a1, ExtValue::inf()}, p, grid);
    if (!rep.pass) {
      detail = "function " + std::to_string(i) + " failed";
      return false;
    }
  }
  detail = "20 functions, 2 targets each";
  return true;
}

// 9. Reduced-count exactness for z^2 at 0: 1 when c = 0, 2 when c = 1.
bool crit_reduced_exactness(std::string& detail) {
  RatFun sq = pow(RatFun::z(), 2);
  int jackson = hahn_reduced_count(sq, 1.0, cplx(0.0), HahnParams{0.5, 0.0});
  int shifted = hahn_reduced_count(sq, 1.0, cplx(0.0), HahnParams{0.5, 1.0});
  detail = "c=0: " + std::to_string(jackson) + ", c=1: " + std::to_string(shifted);
  return jackson == 1 && shifted == 2;
}

// 10. Logarithmic-order estimator on synthetic and closed-form rows.
bool crit_order_estimators(std::string& detail) {
  RadiusGrid grid{};
  std::vector<std::pair<double, double>> synth;
  for (double r : grid.radii()) synth.push_back({r, std::pow(std::log(r), 2.0)});
  double synth_slope = order_estimators(synth).rho_log;

  const double log2 = std::log(2.0);
  std::vector<std::pair<double, double>> poch;
  double top = 0.0;
  for (int j = 0; j <= 20; ++j) {
    double N = 0.0;
    for (int n = 0; n <= j; ++n) N += (j - n) * log2;
    poch.push_back({std::pow(2.0, j), N});
    top = N;
  }
  double poch_slope = order_estimators(poch).rho_log;
  detail = "synthetic " + format_double(synth_slope) + ", pochhammer " +
           format_double(poch_slope) + ", N(2^20) = " + format_double(top);
  return synth_slope >= 1.9 && synth_slope <= 2.1 && poch_slope >= 1.8 &&
         poch_slope <= 2.2 && close(top, 210.0 * log2, 1e-9);
}

// 11. Fermat sweep: the residual never vanishes over 500 random functions.
bool crit_fermat_sweep(std::string& detail) {
  Rng rng(211);
  for (int i = 0; i < 500; ++i) {
    RatFun f = testsup::random_ratfun(rng, 4);
    HahnParams p{std::polar(rng.uniform(0.2, 0.9), rng.uniform(0.0, 6.28)),
                 rng.box(2.0)};
    if (!residual_nonzero(fermat_residual(f, p))) {
      detail = "vanishing residual at function " + std::to_string(i) +
               " -- would exhibit a nonconstant solution";
      return false;
    }
  }
  detail = "500 functions, all residuals nonzero";
  return true;
}

// 12. Five-value comparator on identical functions and on (z, 2z).
bool crit_five_value(std::string& detail) {
  RadiusGrid grid{};
  HahnParams p{0.5, 1.0};
  std::vector<ExtValue> targets{cplx(0.0), cplx(1.0), cplx(2.0), cplx(3.0),
                                ExtValue::inf()};
  Rng rng(212);
  for (int i = 0; i < 3; ++i) {
    RatFun g = testsup::random_ratfun(rng, 4);
    CheckReport rep = compare_sharing(g, g, targets, p, grid);
    if (!rep.pass || rep.classification != "5/5 shared; g == h") {
      detail = "identical functions not recognized";
      return false;
    }
  }
  CheckReport two = compare_sharing(RatFun::z(), 2.0 * RatFun::z(), targets, p, grid);
  bool ok = two.classification == "2/5 shared" &&
            two.rows[0].extra.at("shared") == 1.0 &&
            two.rows[4].extra.at("shared") == 1.0;
  detail = "(z, 2z): " + two.classification;
  return ok && two.pass;
}

// 13. q-exponential coefficients and solver residual.
bool crit_heq(std::string& detail) {
  HahnParams p{0.5, 1.0};
  cplx z0 = p.z0();
  std::vector<PowerSeries> A{PowerSeries::constant(z0, -1.0, 24)};
  PowerSeries sol = heq_solve(A, {1.0}, 24, p);
  bool coeffs_ok = close(std::abs(sol.coeff(1) - 1.0), 0.0, 1e-12) &&
                   close(std::abs(sol.coeff(2) - 2.0 / 3.0), 0.0, 1e-12) &&
                   close(std::abs(sol.coeff(3) - 8.0 / 21.0), 0.0, 1e-12);
  auto res = heq_residual(A, sol, std::vector<cplx>{z0 + 0.1}, p);
  double rnorm = res[0] ? std::abs(*res[0]) : 1.0;
  detail = "a1..a3 " + std::string(coeffs_ok ? "exact" : "WRONG") +
           ", |residual(w=0.1)| = " + format_double(rnorm);
  return coeffs_ok && rnorm < 1e-8;
}

// 14. Parser: documented examples round-trip; malformed inputs carry offsets.
bool crit_parser(std::string& detail) {
  const char* examples[] = {"(z^2+1)/(z-2)", "1/z + z", "2i*z - 1",
                            "(z + 1)", "(z^2 + 1)/(z)", "0.5*z^3 - i"};
  for (const char* text : examples) {
    RatFun g = parse_expr(text);
    RatFun back = parse_expr(format_expr(g, 15));
    if (!approx_equal_coeffs(g, back, 1e-10)) {
      detail = std::string("round trip failed for ") + text;
      return false;
    }
  }
  struct Bad {
    const char* text;
    std::size_t offset;
  } bads[] = {{"z^z", 2}, {"1/(z-z)", 1}, {"(z+1", 4}};
  for (const Bad& b : bads) {
    try {
      parse_expr(b.text);
      detail = std::string("no error for ") + b.text;
      return false;
    } catch (const parse_error& e) {
      if (e.offset != b.offset) {
        detail = std::string("wrong offset for ") + b.text + ": got " +
                 std::to_string(e.offset);
        return false;
      }
    }
  }
  detail = "6 round trips, 3 position-bearing rejections";
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "operator exactness: D z^2 = (1+q)z + c", 1.0, crit_operator_exactness},
      {2, "iterate equivalence: recursion vs closed form, k = 2..4", 10.0,
       crit_iterate_equivalence},
      {3, "product rule and linearity, 100 random pairs", 5.0, crit_product_rule},
      {4, "series/rational cross-check, degree <= 6", 1.0, crit_series_cross_check},
      {5, "first fundamental theorem within 2.0 on the grid", 60.0, crit_first_ft},
      {6, "logarithmic-quotient smallness, k <= 3, 20-function suite", 120.0,
       crit_lodl},
      {7, "second-main-theorem slack nonnegative on the suite", 120.0, crit_smt},
      {8, "defect-relation sums below the bound", 60.0, crit_defects},
      {9, "reduced-count exactness for z^2 at the origin", 1.0,
       crit_reduced_exactness},
      {10, "logarithmic-order estimator windows", 5.0, crit_order_estimators},
      {11, "fermat residual sweep, 500 functions", 60.0, crit_fermat_sweep},
      {12, "five-value comparator", 5.0, crit_five_value},
      {13, "q-exponential solver coefficients and residual", 1.0, crit_heq},
      {14, "parser round trips and rejections", 1.0, crit_parser},
  };

  int failures = 0;
  for (Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
      ok = false;
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (seconds > c.budget_seconds) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("over budget ") +
                format_double(c.budget_seconds) + " s";
    }
    std::printf("%s  %2d  %-58s  %7.2fs  %s\n", ok ? "PASS" : "FAIL", c.id,
                c.label.c_str(), seconds, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
