#pragma once

// Compensated (double-double) complex polynomial kernel shared by the
// operator algebra and the rational-function arithmetic.  Iterated products
// and alternating sums cancel coefficients several orders below their
// construction magnitudes; double round-off amplified by those ratios breaks
// the tolerances the library promises, so the hot constructions run on
// ~31-digit arithmetic and round once at the end.

#include <cmath>
#include <vector>

#include "hahnev/poly.hpp"
#include "hahnev/types.hpp"

namespace hahnev::ddk {

struct dd {
  double hi = 0.0, lo = 0.0;
};

inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline dd dd_neg(dd a) { return {-a.hi, -a.lo}; }
inline dd dd_sub(dd a, dd b) { return dd_add(a, dd_neg(b)); }

inline dd dd_mul(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline dd dd_div(dd a, dd b) {
  double q1 = a.hi / b.hi;
  dd r = dd_sub(a, dd_mul({q1, 0.0}, b));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul({q2, 0.0}, b));
  double q3 = r.hi / b.hi;
  return dd_add(quick_two_sum(q1, q2), {q3, 0.0});
}

struct cdd {
  dd re, im;
};

inline cdd to_cdd(cplx z) { return {{z.real(), 0.0}, {z.imag(), 0.0}}; }
inline cplx to_cplx(cdd z) { return {z.re.hi, z.im.hi}; }

inline cdd cdd_add(cdd a, cdd b) {
  return {dd_add(a.re, b.re), dd_add(a.im, b.im)};
}
inline cdd cdd_sub(cdd a, cdd b) {
  return {dd_sub(a.re, b.re), dd_sub(a.im, b.im)};
}
inline cdd cdd_mul(cdd a, cdd b) {
  return {dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im)),
          dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}
inline cdd cdd_div(cdd a, cdd b) {
  dd norm = dd_add(dd_mul(b.re, b.re), dd_mul(b.im, b.im));
  cdd num = cdd_mul(a, {b.re, dd_neg(b.im)});
  return {dd_div(num.re, norm), dd_div(num.im, norm)};
}
inline double cdd_abs(cdd a) { return std::hypot(a.re.hi, a.im.hi); }
inline bool cdd_is_zero(cdd a) {
  return a.re.hi == 0.0 && a.re.lo == 0.0 && a.im.hi == 0.0 && a.im.lo == 0.0;
}

inline cdd cdd_pow(cdd b, int n) {
  cdd acc = to_cdd(1.0);
  for (int i = 0; i < n; ++i) acc = cdd_mul(acc, b);
  return acc;
}

// [m]_q = (q^m - 1)/(q - 1) in compensated arithmetic.
inline cdd cdd_q_integer(cdd q, int m) {
  return cdd_div(cdd_sub(cdd_pow(q, m), to_cdd(1.0)),
                 cdd_sub(q, to_cdd(1.0)));
}

// [k i]_q by the telescoping product, in compensated arithmetic: the
// alternating expansion coefficients must cancel to the kernel's precision,
// not to double round-off.
inline cdd cdd_gauss_binomial(int n, int j, cdd q) {
  if (j > n - j) j = n - j;
  cdd prod = to_cdd(1.0);
  for (int t = 1; t <= j; ++t)
    prod = cdd_mul(prod, cdd_div(cdd_sub(to_cdd(1.0), cdd_pow(q, n - t + 1)),
                                 cdd_sub(to_cdd(1.0), cdd_pow(q, t))));
  return prod;
}

using DPoly = std::vector<cdd>;  // ascending coefficients

inline void dstrip(DPoly& p) {
  while (!p.empty() && cdd_is_zero(p.back())) p.pop_back();
}

// Strips leading coefficients that sit at the kernel's round-off floor of
// their own construction envelope (leading-coefficient cancellation in the
// alternating sums is what legitimately drops degrees here).
inline void dstrip_noise(DPoly& p, const Poly& env) {
  while (!p.empty()) {
    double e = std::abs(env.coeff(static_cast<int>(p.size()) - 1));
    if (cdd_abs(p.back()) <= 1e-24 * e)
      p.pop_back();
    else
      break;
  }
}

inline DPoly to_dpoly(const Poly& p) {
  DPoly out(p.coeffs().size());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = to_cdd(p.coeff(static_cast<int>(k)));
  return out;
}

inline Poly to_poly(const DPoly& p) {
  std::vector<cplx> out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out[k] = to_cplx(p[k]);
  return Poly(std::move(out));
}

inline double dmax_abs(const DPoly& p) {
  double m = 0.0;
  for (const cdd& a : p) m = std::max(m, cdd_abs(a));
  return m;
}

inline DPoly dmul(const DPoly& a, const DPoly& b) {
  if (a.empty() || b.empty()) return {};
  DPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = cdd_add(out[i + j], cdd_mul(a[i], b[j]));
  return out;
}

inline DPoly dsub(DPoly a, const DPoly& b) {
  if (b.size() > a.size()) a.resize(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) a[k] = cdd_sub(a[k], b[k]);
  dstrip(a);
  return a;
}

inline DPoly dadd(DPoly a, const DPoly& b) {
  if (b.size() > a.size()) a.resize(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) a[k] = cdd_add(a[k], b[k]);
  dstrip(a);
  return a;
}

inline DPoly dscale(DPoly a, cdd s) {
  for (cdd& x : a) x = cdd_mul(x, s);
  return a;
}

inline DPoly dcompose_affine(const DPoly& p, cdd alpha, cdd beta) {
  if (p.empty()) return {};
  DPoly acc{p.back()};
  for (int k = static_cast<int>(p.size()) - 2; k >= 0; --k) {
    DPoly next(acc.size() + 1);
    for (std::size_t j = 0; j < acc.size(); ++j) {
      next[j] = cdd_add(next[j], cdd_mul(acc[j], beta));
      next[j + 1] = cdd_add(next[j + 1], cdd_mul(acc[j], alpha));
    }
    next[0] = cdd_add(next[0], p[k]);
    acc = std::move(next);
  }
  return acc;
}

inline DPoly dderivative(const DPoly& p) {
  if (p.size() <= 1) return {};
  DPoly out(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k)
    out[k - 1] = cdd_mul(p[k], to_cdd(cplx(static_cast<double>(k))));
  return out;
}

inline cdd deval(const DPoly& p, cdd z) {
  if (p.empty()) return {};
  cdd acc = p.back();
  for (int k = static_cast<int>(p.size()) - 2; k >= 0; --k)
    acc = cdd_add(cdd_mul(acc, z), p[k]);
  return acc;
}

// Division by (z - r), remainder dropped; the backward recurrence for
// |r| > 1 keeps the discarded mismatch on the leading coefficient.
inline DPoly ddeflate(const DPoly& p, cdd r, int count) {
  DPoly c = p;
  for (int i = 0; i < count; ++i) {
    if (c.size() <= 1) return {};
    if (cdd_abs(r) <= 1.0) {
      cdd t = c.back();
      for (int j = static_cast<int>(c.size()) - 2; j >= 0; --j) {
        cdd next = cdd_add(c[j], cdd_mul(r, t));
        c[j] = t;
        t = next;
      }
      c.pop_back();
    } else {
      DPoly b(c.size() - 1);
      b[0] = cdd_div(cdd_sub(cdd{}, c[0]), r);
      for (std::size_t j = 1; j + 1 < c.size(); ++j)
        b[j] = cdd_div(cdd_sub(b[j - 1], c[j]), r);
      c = std::move(b);
    }
  }
  return c;
}

// Residual floor for a refined root, relative to Σ|a_i||z|^i of the
// polynomial being tested: the kernel's true residue sits ~1e-24 under that
// scale even after heavy construction cancellation, genuine nonzero values
// far above 1e-17.
constexpr double kResidualRel = 1e-17;
// How far a refined root may sit from its structural prediction.  The
// predictions are affine images of level-0 roots, good to ~1e-12.
constexpr double kLocateRel = 1e-6;

inline double own_scale(const DPoly& p, double az) {
  double s = 0.0, t = 1.0;
  for (const cdd& a : p) {
    s += cdd_abs(a) * t;
    t *= az;
  }
  return s;
}

// Newton refinement of a root of multiplicity `mult`, run on the
// (mult-1)-st derivative where the root is simple, so deflation discards a
// remainder at the kernel's round-off floor rather than |p'| times the
// location error.
inline cdd drefine(const DPoly& f, cdd x0, int mult) {
  DPoly t = f;
  for (int i = 1; i < mult; ++i) t = dderivative(t);
  DPoly dt = dderivative(t);
  if (dt.empty()) return x0;
  cdd best = x0, x = x0;
  double best_v = cdd_abs(deval(t, x0));
  for (int it = 0; it < 12; ++it) {
    cdd slope = deval(dt, x);
    if (cdd_abs(slope) == 0.0) break;
    x = cdd_sub(x, cdd_div(deval(t, x), slope));
    if (!std::isfinite(x.re.hi) || !std::isfinite(x.im.hi)) break;
    double v = cdd_abs(deval(t, x));
    if (v >= best_v) break;
    best_v = v;
    best = x;
  }
  return best;  // callers gate on the distance from x0
}



}  // namespace hahnev::ddk
