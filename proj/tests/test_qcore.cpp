#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hahnev/qcore.hpp"
#include "support.hpp"

using namespace hahnev;

TEST_CASE("q_integer basics") {
  CHECK(std::abs(q_integer(0, 0.5)) == 0.0);
  CHECK(std::abs(q_integer(1, 0.5) - 1.0) < 1e-15);
  CHECK(std::abs(q_integer(3, 0.5) - 1.75) < 1e-15);  // 1 + 0.5 + 0.25
  CHECK_THROWS_AS(q_integer(3, 1.0), invalid_parameter);
}

TEST_CASE("pochhammer finite") {
  testsup::Rng rng(7);
  cplx a = rng.box(2.0), q = rng.box(0.9);
  CHECK(std::abs(pochhammer(a, q, 0) - 1.0) == 0.0);
  CHECK(std::abs(pochhammer(2.0, 0.5, 2)) < 1e-15);           // (1-2)(1-1)
  CHECK(std::abs(pochhammer(0.5, 0.5, 2) - 0.375) < 1e-15);   // 0.5 * 0.75
}

TEST_CASE("pochhammer_inf truncation against a long direct product") {
  CHECK(std::abs(pochhammer_inf(0.0, 0.5, 1e-12) - 1.0) == 0.0);
  CHECK(std::abs(pochhammer_inf(1.0, 0.5, 1e-12)) < 1e-15);
  cplx direct = pochhammer(0.5, 0.5, 60);
  CHECK(std::abs(pochhammer_inf(0.5, 0.5, 1e-12) - direct) < 1e-12);
  CHECK_THROWS_AS(pochhammer_inf(0.5, 1.5, 1e-12), invalid_parameter);

  testsup::Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    double tol = 1e-10;
    cplx a = rng.box(2.0);
    cplx q = std::polar(rng.uniform(0.05, 0.9), rng.uniform(0.0, 6.28));
    cplx lhs = pochhammer_inf(a, q, tol);
    cplx rhs = pochhammer(a, q, 200);
    CHECK(std::abs(lhs - rhs) <= 10.0 * tol * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("gauss binomial values, symmetry, Pascal identity") {
  CHECK(std::abs(gauss_binomial(5, 0, cplx(0.3, 0.1)) - 1.0) == 0.0);
  CHECK(std::abs(gauss_binomial(2, 1, 0.5) - 1.5) < 1e-15);
  CHECK(std::abs(gauss_binomial(3, 1, 0.5) - 1.75) < 1e-15);
  CHECK_THROWS_AS(gauss_binomial(3, 4, 0.5), invalid_parameter);
  CHECK_THROWS_AS(gauss_binomial(3, -1, 0.5), invalid_parameter);

  testsup::Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    cplx q = std::polar(rng.uniform(0.1, 0.95), rng.uniform(0.0, 6.28));
    int n = rng.integer(0, 10);
    for (int j = 0; j <= n; ++j) {
      cplx lhs = gauss_binomial(n, j, q);
      cplx rhs = gauss_binomial(n, n - j, q);
      CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(lhs)));
    }
    for (int j = 0; j <= n; ++j) {
      cplx lhs = gauss_binomial(n + 1, j, q);
      cplx rhs = std::pow(q, j) * gauss_binomial(n, j, q);
      if (j >= 1) rhs += gauss_binomial(n, j - 1, q);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("sigma iterates") {
  HahnParams p{0.5, 1.0};
  CHECK(sigma_iter(cplx(3.0, -2.0), 0, p) == cplx(3.0, -2.0));
  CHECK(std::abs(sigma_iter(0.0, 2, p) - 1.5) < 1e-15);  // σ(σ(0)) = σ(1)
  CHECK(std::abs(sigma_iter(2.0, 5, p) - 2.0) < 1e-14);  // z0 = 2 is fixed

  testsup::Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    HahnParams pp{std::polar(rng.uniform(0.2, 0.9), rng.uniform(0.0, 6.28)),
                  rng.box(2.0)};
    cplx z = rng.box(3.0);
    int j = rng.integer(0, 8), k = rng.integer(0, 8 - j);
    cplx lhs = sigma_iter(z, j + k, pp);
    cplx rhs = sigma_iter(sigma_iter(z, j, pp), k, pp);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(z)));
  }
}

TEST_CASE("HahnParams validity and fixed point") {
  HahnParams p{0.5, 1.0};
  CHECK(p.operator_valid());
  CHECK(p.theorem_valid());
  CHECK(std::abs(p.sigma(p.z0()) - p.z0()) <=
        16.0 * 2.3e-16 * (1.0 + std::abs(p.z0())));

  HahnParams big{2.0, 1.0};
  CHECK(big.operator_valid());
  CHECK(!big.theorem_valid());
  CHECK_THROWS_AS(big.require_theorem_valid(), invalid_parameter);
  HahnParams bad{1.0, 1.0};
  CHECK(!bad.operator_valid());
  CHECK_THROWS_AS(bad.require_operator_valid(), invalid_parameter);
}
