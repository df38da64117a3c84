#pragma once

#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "hahnev/types.hpp"

namespace hahnev {

// A point together with a multiplicity (root of a polynomial, zero or pole
// of a rational function).
struct PointMult {
  cplx location;
  int mult = 1;
};

// Dense complex polynomial, coefficients in ascending degree.  Normal form:
// no stored leading zeros, so coeffs().size() == degree()+1 for nonzero
// polynomials and coeffs() is empty for the zero polynomial.
class Poly {
public:
  // degree() of the zero polynomial; plays the role of "-infinity" and is
  // distinct from 0.
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  Poly() = default;
  Poly(std::initializer_list<cplx> ascending)
      : coeffs_(ascending) {
    strip();
  }
  explicit Poly(std::vector<cplx> ascending) : coeffs_(std::move(ascending)) {
    strip();
  }

  static Poly constant(cplx a) { return Poly{a}; }
  static Poly z() { return Poly{cplx(0.0), cplx(1.0)}; }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  int degree() const {
    return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1;
  }
  cplx coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k]
                                                            : cplx(0.0);
  }
  cplx leading() const { return coeffs_.empty() ? cplx(0.0) : coeffs_.back(); }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

  double max_abs_coeff() const;

  // Strips leading coefficients of magnitude <= rel * max|coeff|; used by
  // normalization to drop subtraction round-off that would otherwise fake a
  // degree.
  Poly trimmed(double rel) const;

  // Strips leading coefficients at or below an absolute floor (a round-off
  // scale known to the caller from the construction).  Coefficients of
  // iterated-operator denominators legitimately span many orders of
  // magnitude, so relative cutoffs are not safe there.
  Poly trimmed_abs(double floor_abs) const;

  Poly derivative() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(cplx s);
  Poly operator-() const;

private:
  void strip();  // remove exact trailing zeros
  std::vector<cplx> coeffs_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(cplx s, Poly a);

// Quotient and remainder with deg(rem) < deg(b).  b must be nonzero.
std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);

// Horner evaluation.
cplx eval(const Poly& p, cplx z);

// Horner evaluation plus the running magnitude Σ|a_k||z|^k, the natural
// scale against which |p(z)| ≈ 0 must be judged.
std::pair<cplx, double> eval_with_scale(const Poly& p, cplx z);

// Coefficients of p(alpha*z + beta).
Poly compose_affine(const Poly& p, cplx alpha, cplx beta);

// Taylor coefficients of p at z0 (repeated synthetic division).
std::vector<cplx> taylor_at(const Poly& p, cplx z0);

// Order of vanishing of p at z0: the number of leading Taylor coefficients
// that are negligible, judged against tol*max|coeff| and against the
// round-off floor of the shifted-coefficient computation (whichever is
// larger, so structural factors are still detected at high degree where the
// shift is ill-conditioned).  p must be nonzero.
int order_at(const Poly& p, cplx z0, double tol = kClusterTol);

// divides p by (z - r) `count` times, discarding the (small) remainders.
Poly deflate(const Poly& p, cplx r, int count);

// All roots with multiplicities.  Ehrlich-Aberth simultaneous iteration with
// deterministic initial points, followed by clustering (roots within
// tol*(1+|z|), or within each other's stagnation radius, merge; cluster size
// = multiplicity) and a Newton polish of each cluster on the (m-1)-st
// derivative.  Throws solver_failure on non-convergence or when the residual
// acceptance test |p(root)| <= tol*max|coeff|*(1+|root|)^deg fails.
std::vector<PointMult> find_roots(const Poly& p, double tol = kClusterTol);

// lead * Π (z - r_i)^{m_i}; used as the re-expansion oracle in tests and by
// generators.
Poly from_roots(cplx lead, std::span<const PointMult> roots);

}  // namespace hahnev
