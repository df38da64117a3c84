#pragma once

#include "hahnev/types.hpp"

namespace hahnev {

// Parameters (q, c) of the difference quotient
//     g  |->  (g(qz + c) - g(z)) / ((q - 1)z + c)
// together with the fixed point z0 = c/(1 - q) of the shift σ(z) = qz + c.
// z0 is both the zero of the quotient's denominator and the one center where
// the operator acts diagonally on power series.
//
// Two validity regimes: the operator itself needs q ∉ {0, 1}; the theorem
// checks additionally need 0 < |q| < 1.  Each operation states which regime
// it requires.
struct HahnParams {
  cplx q;
  cplx c;

  cplx z0() const { return c / (1.0 - q); }
  cplx sigma(cplx z) const { return q * z + c; }

  bool operator_valid() const { return q != cplx(0.0) && q != cplx(1.0); }
  bool theorem_valid() const {
    double aq = std::abs(q);
    return aq > 0.0 && aq < 1.0;
  }

  void require_operator_valid() const;
  void require_theorem_valid() const;
};

// [n]_q = (q^n - 1)/(q - 1) = 1 + q + ... + q^(n-1).  Requires q != 1.
cplx q_integer(int n, cplx q);

// (a;q)_n = (1 - a)(1 - aq)...(1 - aq^(n-1)); (a;q)_0 = 1.
cplx pochhammer(cplx a, cplx q, int n);

// (a;q)_∞ for |q| < 1, truncated once the geometric tail of Σ log(1 - aq^n)
// drops below tol; absolute error of the log of the product is <= 2*tol.
cplx pochhammer_inf(cplx a, cplx q, double tol);

// Gaussian binomial [n j]_q, computed as the telescoping product
// Π_{k=1..j} (1 - q^(n-k+1))/(1 - q^k) rather than a quotient of Pochhammer
// symbols, so nothing cancels catastrophically as |q| -> 1.
cplx gauss_binomial(int n, int j, cplx q);

// σ^k(z) = q^k z + c [k]_q; σ^0 = id, and z0 is fixed for every k.
cplx sigma_iter(cplx z, int k, const HahnParams& p);

}  // namespace hahnev
