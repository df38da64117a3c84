#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hahnev/verify.hpp"
#include "support.hpp"

using namespace hahnev;

namespace {
const HahnParams kP{0.5, 1.0};

RatFun zp1z() { return RatFun::z() + pow(RatFun::z(), -1); }
}  // namespace

TEST_CASE("logarithmic-quotient check passes on rational inputs") {
  RadiusGrid grid{};
  CheckReport r1 = check_lodl(pow(RatFun::z(), 2), kP, 1, grid);
  CHECK(r1.pass);
  CheckReport r2 = check_lodl(zp1z(), kP, 2, grid);
  CHECK(r2.pass);
  CHECK_THROWS_AS(check_lodl(RatFun::constant(2.0), kP, 1, grid), degenerate_input);
  HahnParams big{2.0, 1.0};
  CHECK_THROWS_AS(check_lodl(zp1z(), big, 1, grid), invalid_parameter);
}

TEST_CASE("second-main-theorem slack stays nonnegative") {
  RadiusGrid grid{};
  HahnParams p{0.5, 0.3};
  CheckReport rep = check_smt(zp1z(), {cplx(2.0), cplx(-2.0), ExtValue::inf()},
                              p, grid);
  CHECK(rep.pass);
  // The intermediate sum-minus-Nqc column is carried for inspection.
  CHECK(rep.rows.back().extra.count("sumN_minus_Nqc") == 1);

  CheckReport two = check_smt(zp1z(), {cplx(2.0), cplx(-2.0)}, p, grid);
  CHECK(two.pass);  // (l-2) = 0: trivially nonnegative slack

  CheckReport sq = check_smt(pow(RatFun::z(), 2),
                             {cplx(0.0), cplx(1.0), ExtValue::inf()}, p, grid);
  CHECK(sq.pass);

  CHECK_THROWS_AS(
      check_smt(zp1z(), {cplx(2.0), cplx(2.0), ExtValue::inf()}, p, grid),
      std::invalid_argument);
  CHECK_THROWS_AS(check_smt(zp1z(), {cplx(2.0)}, p, grid), std::invalid_argument);
}

TEST_CASE("defect sums respect the bound") {
  RadiusGrid grid{};
  CheckReport r1 = check_defect_sum(RatFun::z(), {cplx(0.0), ExtValue::inf()},
                                    kP, grid);
  CHECK(r1.pass);

  HahnParams jackson{0.5, 0.0};
  CheckReport r2 = check_defect_sum(pow(RatFun::z(), 2),
                                    {cplx(0.0), ExtValue::inf()}, jackson, grid);
  CHECK(r2.pass);
  // Theta(0) ~ 0.5 and Theta(inf) = 1: the summary row sees about 1.5.
  double sum_theta = 0.0;
  for (const CheckRow& row : r2.rows)
    if (row.extra.count("Theta")) sum_theta += row.extra.at("Theta");
  CHECK(sum_theta > 1.3);
  CHECK(sum_theta < 1.7);

  CheckReport empty = check_defect_sum(zp1z(), {}, kP, grid);
  CHECK(empty.pass);
}

TEST_CASE("picard classification on the rational test bed") {
  RadiusGrid grid{};
  HahnParams jackson{0.5, 0.0};
  CheckReport r1 = classify_picard(pow(RatFun::z(), 2), cplx(0.0), jackson, grid);
  CHECK(r1.classification == "picard");

  CheckReport r2 = classify_picard(pow(RatFun::z(), -1), cplx(0.0), kP, grid);
  CHECK(r2.classification == "picard");  // no finite zeros at all

  // Zeros marching through 1, 2, 4, 8 against a short grid: the count still
  // grows over the top half, so the finite-grid criterion says not-picard.
  RatFun spread(from_roots(1.0, std::vector<PointMult>{
                               {1.0, 1}, {2.0, 1}, {4.0, 1}, {8.0, 1}}),
                Poly{1.0});
  RadiusGrid small{1.0, 16.0, 21};
  CheckReport r3 = classify_picard(spread, cplx(0.0), kP, small);
  CHECK(r3.classification == "not-picard");
  REQUIRE(!r3.notes.empty());
  CHECK(r3.notes.front().find("finite grid") != std::string::npos);
}

TEST_CASE("five-value comparison") {
  RadiusGrid grid{};
  std::vector<ExtValue> targets{cplx(0.0), cplx(1.0), cplx(2.0), cplx(3.0),
                                ExtValue::inf()};

  CheckReport same = compare_sharing(zp1z(), zp1z(), targets, kP, grid);
  CHECK(same.pass);
  CHECK(same.classification == "5/5 shared; g == h");

  CheckReport twoz = compare_sharing(RatFun::z(), 2.0 * RatFun::z(), targets,
                                     kP, grid);
  CHECK(twoz.pass);
  CHECK(twoz.classification == "2/5 shared");  // exactly 0 and inf
  CHECK(twoz.rows[0].extra.at("shared") == 1.0);   // target 0
  CHECK(twoz.rows[4].extra.at("shared") == 1.0);   // target inf
  for (int i : {1, 2, 3}) CHECK(twoz.rows[i].extra.at("shared") == 0.0);

  CheckReport shift = compare_sharing(RatFun::z(), RatFun::z() + cplx(1.0),
                                      targets, kP, grid);
  CHECK(shift.classification == "1/5 shared");  // only inf

  CHECK_THROWS_AS(compare_sharing(zp1z(), zp1z(),
                                  {cplx(0.0), cplx(1.0), cplx(2.0), cplx(3.0)},
                                  kP, grid),
                  std::invalid_argument);
}

TEST_CASE("fermat residuals never vanish on rational inputs") {
  RatFun rz = fermat_residual(RatFun::z(), kP);
  CHECK(approx_equal(rz, RatFun(Poly{0.0, 0.0, 0.0, 1.0}, Poly{1.0}), 1e-12));
  CHECK(residual_nonzero(rz));

  RatFun r2z = fermat_residual(2.0 * RatFun::z(), kP);
  CHECK(approx_equal(r2z, RatFun(Poly{7.0, 0.0, 0.0, 8.0}, Poly{1.0}), 1e-12));

  // f = z^2: f^3 + (1.5 z + 1)^3 - 1.
  RatFun fsq = fermat_residual(pow(RatFun::z(), 2), kP);
  Poly cube_term = Poly{1.0, 1.5} * Poly{1.0, 1.5} * Poly{1.0, 1.5};
  Poly expect = Poly{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0} + cube_term - Poly{1.0};
  CHECK(approx_equal(fsq, RatFun(expect, Poly{1.0}), 1e-12));
  CHECK(residual_nonzero(fsq));

  CHECK_THROWS_AS(fermat_residual(RatFun::constant(0.3), kP), std::invalid_argument);

  testsup::Rng rng(109);
  for (int trial = 0; trial < 50; ++trial) {
    RatFun f = testsup::random_ratfun(rng, 4);
    CHECK(residual_nonzero(fermat_residual(f, kP)));
  }
}

TEST_CASE("sharing is reflexive for random functions") {
  RadiusGrid grid{1.0, 65536.0, 21};
  testsup::Rng rng(113);
  std::vector<ExtValue> targets{cplx(0.5), cplx(-1.0), cplx(2.0, 1.0),
                                cplx(-0.25, -0.5), ExtValue::inf()};
  for (int trial = 0; trial < 3; ++trial) {
    RatFun g = testsup::random_ratfun(rng, 4);
    bool degenerate = false;
    for (const ExtValue& a : targets)
      if (!a.is_inf() && g.is_constant()) degenerate = true;
    if (degenerate) continue;
    CheckReport rep = compare_sharing(g, g, targets, kP, grid);
    CHECK(rep.pass);
    CHECK(rep.classification == "5/5 shared; g == h");
  }
}
