#pragma once

#include <optional>
#include <vector>

#include "hahnev/poly.hpp"
#include "hahnev/types.hpp"

namespace hahnev {

// Normalized quotient of two coprime polynomials with monic denominator.
// Construction is the one place where numerator and denominator roots are
// matched and cancelled (min multiplicity, within the cluster tolerance);
// everything downstream trusts that decision.
class RatFun {
public:
  RatFun() : num_(), den_{cplx(1.0)} {}  // the zero function 0/1
  // zero_floor is an absolute coefficient scale below which the numerator
  // counts as identically zero; sums and differences pass the round-off
  // floor of their operands so full cancellation collapses to the zero
  // function instead of surviving as noise.
  RatFun(Poly num, Poly den, double tol = kClusterTol, double zero_floor = 0.0);

  static RatFun constant(cplx a) { return RatFun(Poly::constant(a), Poly::constant(1.0)); }
  static RatFun z() { return RatFun(Poly::z(), Poly::constant(1.0)); }

  // Parts already known to be coprime (callers that track denominator roots
  // structurally): trims round-off and scales the denominator monic, but
  // performs no root matching.
  static RatFun from_coprime(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  cplx constant_value() const { return num_.coeff(0) / den_.coeff(0); }

  // max(deg num, deg den); 0 for constants (including the zero function).
  int degree() const {
    int dn = num_.is_zero() ? 0 : num_.degree();
    return std::max(dn, den_.degree());
  }

private:
  struct normalized_tag {};
  RatFun(normalized_tag, Poly num, Poly den)
      : num_(std::move(num)), den_(std::move(den)) {}

  Poly num_;
  Poly den_;
};

RatFun operator+(const RatFun& a, const RatFun& b);
RatFun operator-(const RatFun& a, const RatFun& b);
RatFun operator*(const RatFun& a, const RatFun& b);
RatFun operator/(const RatFun& a, const RatFun& b);  // b must not be ≡ 0
RatFun operator-(const RatFun& a);
RatFun operator*(cplx s, const RatFun& a);
RatFun operator+(const RatFun& a, cplx s);
RatFun operator-(const RatFun& a, cplx s);

// Integer powers; negative exponents go through the reciprocal.
RatFun pow(const RatFun& a, int n, double tol = kClusterTol);

// num(z)/den(z).  nullopt is the pole marker: |den(z)| negligible while
// |num(z)| is not.  When both are negligible (evaluation exactly on a point
// the normalization could not separate) the value of the deflated ratio is
// returned instead.
std::optional<cplx> eval(const RatFun& g, cplx z, double tol = kClusterTol);

// g(alpha*z + beta), alpha != 0.
RatFun compose_affine(const RatFun& g, cplx alpha, cplx beta,
                      double tol = kClusterTol);

// num - a*den, with leading coefficients judged against their own
// per-coefficient round-off envelope |num_j| + |a||den_j| (a flat relative
// cutoff would eat genuinely tiny leading coefficients).  The zero
// polynomial signals g ≡ a.
Poly target_numerator(const RatFun& g, cplx a);

// Solutions of g = a with multiplicities: roots of num - a*den for finite a,
// roots of den for a = ∞.  Throws degenerate_input when g ≡ a.  A constant
// g != a yields the empty set.
std::vector<PointMult> a_points(const RatFun& g, ExtValue a,
                                double tol = kClusterTol);

// Net order at z0: positive = zero order, negative = pole order, 0 otherwise.
int order_at(const RatFun& g, cplx z0, double tol = kClusterTol);

// Cross-multiplied comparison: a ≡ b up to tol relative to coefficient scale.
bool approx_equal(const RatFun& a, const RatFun& b, double tol = 1e-9);

// Coefficient-wise comparison of the canonical (coprime, monic-denominator)
// forms, relative to the larger coefficient scale.
bool approx_equal_coeffs(const RatFun& a, const RatFun& b, double tol = 1e-9);

}  // namespace hahnev
