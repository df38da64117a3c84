#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hahnev/hahn.hpp"
#include "hahnev/qcore.hpp"
#include "hahnev/ratfun.hpp"

namespace hahnev {

// Truncated power series Σ a_n w^n in w = z - center.  Arithmetic truncates
// to the smaller operand order; the truncation order never silently grows.
//
// Series meant to interact with the difference operator must be centered at
// z0 = c/(1-q): there σ(z) - z0 = q(z - z0) and (q-1)z + c = (q-1)(z - z0),
// so the operator acts diagonally, b_n = [n+1]_q a_{n+1}.
class PowerSeries {
public:
  PowerSeries(cplx center, std::vector<cplx> coeffs);

  static PowerSeries constant(cplx center, cplx a0, int trunc);

  cplx center() const { return center_; }
  int trunc() const { return static_cast<int>(coeffs_.size()) - 1; }
  cplx coeff(int n) const {
    return (n >= 0 && n < static_cast<int>(coeffs_.size())) ? coeffs_[n]
                                                            : cplx(0.0);
  }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

  cplx eval_w(cplx w) const;              // Horner in w
  cplx eval_z(cplx z) const { return eval_w(z - center_); }

private:
  cplx center_;
  std::vector<cplx> coeffs_;  // a_0 .. a_N
};

// Centers must match (within round-off of the center magnitude).
PowerSeries add(const PowerSeries& a, const PowerSeries& b);
PowerSeries mul(const PowerSeries& a, const PowerSeries& b);  // Cauchy product
PowerSeries scale(const PowerSeries& a, cplx s);

// The diagonal action of the difference operator: b_n = [n+1]_q a_{n+1},
// truncation drops by one.  The series must be centered at p.z0().
PowerSeries series_hahn(const PowerSeries& a, const HahnParams& p);

// Taylor expansions about `center`, truncated at `trunc`.
PowerSeries series_of_poly(const Poly& p, cplx center, int trunc);
// Requires den(center) != 0.
PowerSeries series_of_ratfun(const RatFun& g, cplx center, int trunc);

// Formal solution of
//   D^k g + A_{k-1} D^{k-1} g + ... + A_1 D g + A_0 g = 0
// with prescribed coefficients a_0..a_{k-1}.  A holds A_0..A_{k-1} centered
// at z0; coefficients are produced by the ascending recurrence on
// (D^j g)_n = a_{n+j} Π_{t=1..j}[n+t]_q.  Requires 0 < |q| < 1 (so every
// [m]_q is nonzero).  The residual of the result vanishes through order
// trunc - k.
PowerSeries heq_solve(const std::vector<PowerSeries>& A,
                      const std::vector<cplx>& init, int trunc,
                      const HahnParams& p);

// Left-hand side of the equation above evaluated at the given z-points.
// nullopt marks a pole hit (RatFun variant).
std::vector<std::optional<cplx>> heq_residual(const std::vector<PowerSeries>& A,
                                              const PowerSeries& g,
                                              std::span<const cplx> points,
                                              const HahnParams& p);
std::vector<std::optional<cplx>> heq_residual(const std::vector<PowerSeries>& A,
                                              const RatFun& g,
                                              std::span<const cplx> points,
                                              const HahnParams& p);

// 1 / (median tail ratio |a_{n+1}/a_n|); +inf when the tail gives no usable
// ratios (e.g. terminating series).  Diagnostic only.
double radius_estimate(const PowerSeries& a);

}  // namespace hahnev
