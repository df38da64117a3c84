#include "hahnev/hahn.hpp"

#include "dd_poly.hpp"

#include <algorithm>
#include <cmath>

namespace hahnev {

using namespace ddk;

namespace {

// ---------------------------------------------------------------------------
// Structural iteration state.
//
// Every denominator the iteration produces is a product of known factors,
// u(z) = (q-1)z + c and σ-preimages of the input poles, so the cancellation
// points are affine images of the level-0 roots.  They are carried along
// rather than re-discovered from expanded coefficients, whose root
// condition numbers grow far beyond any fixed matching tolerance.
// ---------------------------------------------------------------------------

struct RootDD {
  cdd location;
  int mult = 1;
};

// The denominator travels as a list of factors (kernel-precision
// polynomials) plus a scalar.  Expanded high-degree denominators put their
// far roots at the mercy of coefficient conditioning; the factors keep every
// root well conditioned in its own few coefficients, and the final product
// of clean factors is clean.
struct FactoredRat {
  DPoly num;
  std::vector<DPoly> den_f;  // each of degree >= 1
  cdd den_scale = to_cdd(1.0);
  std::vector<RootDD> den_roots;
  bool zero = false;
};

DPoly den_product(const FactoredRat& h) {
  DPoly acc{h.den_scale};
  for (const DPoly& f : h.den_f) acc = dmul(acc, f);
  return acc;
}

Poly abs_coeffs_d(const DPoly& p) {
  std::vector<cplx> c(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) c[k] = cdd_abs(p[k]);
  return Poly(std::move(c));
}

// Largest h <= cap such that f has an h-fold root essentially at z: refine
// on the (h-1)-st derivative (simple root there), then demand that the
// refined point stayed put and that f, f', ..., f^(h-1) all evaluate at the
// kernel's round-off floor of their own magnitude scale.  Used only to
// probe for vanishing beyond the structurally guaranteed order.
int vanish_order(const DPoly& f, cdd z, int cap) {
  int deg = static_cast<int>(f.size()) - 1;
  cap = std::min(cap, deg);  // an h-fold root needs degree >= h
  if (cap < 1) return 0;
  std::vector<DPoly> derivs{f};
  for (int j = 1; j < cap; ++j) derivs.push_back(dderivative(derivs.back()));
  double az = cdd_abs(z);
  for (int h = cap; h >= 1; --h) {
    cdd x = drefine(f, z, h);
    if (std::abs(to_cplx(x) - to_cplx(z)) > kLocateRel * (1.0 + az)) continue;
    bool ok = true;
    for (int j = 0; j < h && ok; ++j)
      ok = cdd_abs(deval(derivs[j], x)) <=
           kResidualRel * own_scale(derivs[j], az);
    if (ok) return h;
  }
  return 0;
}

bool same_point(cdd a, cdd b) {
  return std::abs(to_cplx(a) - to_cplx(b)) <= 1e-9 * (1.0 + cdd_abs(a));
}

std::vector<RootDD> merge_points(std::vector<RootDD> pts) {
  std::vector<RootDD> out;
  for (const RootDD& p : pts) {
    bool merged = false;
    for (RootDD& q : out) {
      if (same_point(q.location, p.location)) {
        q.mult += p.mult;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(p);
  }
  return out;
}

int mult_at(const std::vector<RootDD>& pts, cdd x) {
  int m = 0;
  for (const RootDD& p : pts)
    if (same_point(p.location, x)) m += p.mult;
  return m;
}

// Removes (z - rho)^count from the factor list: each removal deflates the
// factor that actually carries the root (smallest residual against its own
// scale); factors reduced to constants fold into the scalar.
void remove_factor_root(std::vector<DPoly>& factors, cdd& scale, cdd rho,
                        int count) {
  double az = cdd_abs(rho);
  for (int c = 0; c < count; ++c) {
    std::size_t best = factors.size();
    double best_rel = 1e300;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      double s = own_scale(factors[i], az);
      if (s == 0.0) s = dmax_abs(factors[i]);
      if (s == 0.0) continue;
      double rel = cdd_abs(deval(factors[i], rho)) / s;
      if (rel < best_rel) {
        best_rel = rel;
        best = i;
      }
    }
    if (best == factors.size()) return;  // nothing carries it; leave as-is
    DPoly q = ddeflate(factors[best], drefine(factors[best], rho, 1), 1);
    if (q.size() <= 1) {
      if (!q.empty()) scale = cdd_mul(scale, q[0]);
      factors.erase(factors.begin() + best);
    } else {
      factors[best] = std::move(q);
    }
  }
}

// Level-0 roots in double precision, then polished onto the kernel's grid:
// the whole structure of later cancellations (σ-chains, leading-coefficient
// collapse at infinity) is only exact when the points carry kernel
// precision.
std::vector<RootDD> dd_roots(const Poly& den, const DPoly& dden, double tol) {
  std::vector<RootDD> out;
  for (const PointMult& r : find_roots(den, tol)) {
    cdd x = drefine(dden, to_cdd(r.location), r.mult);
    if (std::abs(to_cplx(x) - r.location) > 1e-6 * (1.0 + std::abs(r.location)))
      x = to_cdd(r.location);
    out.push_back({x, r.mult});
  }
  return out;
}

FactoredRat make_state(const RatFun& g, double tol) {
  FactoredRat st;
  st.num = to_dpoly(g.num());
  DPoly den = to_dpoly(g.den());
  st.zero = g.is_zero();
  if (g.den().degree() >= 1) {
    st.den_roots = dd_roots(g.den(), den, tol);
    st.den_f.push_back(std::move(den));
  } else {
    st.den_scale = den.empty() ? to_cdd(1.0) : den[0];
  }
  return st;
}

FactoredRat diff_step(const FactoredRat& h, const HahnParams& p) {
  FactoredRat out;
  if (h.zero) {
    out.zero = true;
    return out;
  }
  cdd q = to_cdd(p.q), c = to_cdd(p.c);
  cdd z0 = cdd_div(c, cdd_sub(to_cdd(1.0), q));

  DPoly den = den_product(h);
  std::vector<DPoly> den_f_s;
  den_f_s.reserve(h.den_f.size());
  for (const DPoly& f : h.den_f) den_f_s.push_back(dcompose_affine(f, q, c));
  DPoly den_s{h.den_scale};
  for (const DPoly& f : den_f_s) den_s = dmul(den_s, f);

  DPoly num_s = dcompose_affine(h.num, q, c);
  DPoly top = dsub(dmul(num_s, den), dmul(h.num, den_s));

  Poly abs_n = abs_coeffs_d(h.num), abs_d = abs_coeffs_d(den);
  double aq = std::abs(p.q), ac = std::abs(p.c);
  Poly noise_env = compose_affine(abs_n, aq, ac) * abs_d +
                   abs_n * compose_affine(abs_d, aq, ac);
  dstrip_noise(top, noise_env);

  if (top.empty() || dmax_abs(top) <= 1e-25 * noise_env.max_abs_coeff()) {
    out.zero = true;
    return out;
  }

  out.den_f = h.den_f;
  for (DPoly& f : den_f_s) out.den_f.push_back(std::move(f));
  out.den_f.push_back(DPoly{c, cdd_sub(q, to_cdd(1.0))});  // u(z)
  out.den_scale = cdd_mul(h.den_scale, h.den_scale);

  std::vector<RootDD> roots;
  roots.push_back({z0, 1});
  for (const RootDD& r : h.den_roots) {
    roots.push_back(r);
    roots.push_back({cdd_div(cdd_sub(r.location, c), q), r.mult});  // σ-preimage
  }
  roots = merge_points(std::move(roots));

  for (const RootDD& r : roots) {
    // n(σz)d(z) - n(z)d(σz) vanishes at ρ to at least
    // min(order_d(ρ), order_d(σρ)); at the fixed point the factor always
    // cancels (σz0 = z0 makes the difference vanish identically there),
    // giving max(a, 1) with a the pole order of h at z0.  Deeper accidental
    // vanishing is probed numerically.
    int structural;
    if (same_point(r.location, z0)) {
      structural = std::max(mult_at(h.den_roots, z0), 1);
    } else {
      cdd image = cdd_add(cdd_mul(q, r.location), c);
      structural = std::min(mult_at(h.den_roots, r.location),
                            mult_at(h.den_roots, image));
    }
    int cancel = std::min(
        r.mult, std::max(structural, vanish_order(top, r.location, r.mult)));
    if (cancel > 0) {
      top = ddeflate(top, r.location, cancel);
      remove_factor_root(out.den_f, out.den_scale, r.location, cancel);
    }
    if (r.mult > cancel) out.den_roots.push_back({r.location, r.mult - cancel});
  }
  dstrip(top);
  out.num = std::move(top);
  if (out.num.empty()) {
    out.zero = true;
    out.den_f.clear();
    out.den_roots.clear();
  }
  return out;
}

RatFun package(const FactoredRat& st) {
  if (st.zero) return RatFun();
  return RatFun::from_coprime(to_poly(st.num), to_poly(den_product(st)));
}

}  // namespace

RatFun hahn_diff(const RatFun& g, const HahnParams& p, double tol) {
  p.require_operator_valid();
  return package(diff_step(make_state(g, tol), p));
}

RatFun hahn_iter(const RatFun& g, int k, const HahnParams& p, double tol) {
  p.require_operator_valid();
  if (k < 1) throw invalid_parameter("hahn_iter: k must be >= 1");
  FactoredRat st = make_state(g, tol);
  for (int i = 0; i < k; ++i) st = diff_step(st, p);
  return package(st);
}

RatFun hahn_expand(const RatFun& g, int k, const HahnParams& p, double tol) {
  p.require_operator_valid();
  if (k < 1) throw invalid_parameter("hahn_expand: k must be >= 1");
  for (int t = 1; t <= k; ++t)
    if (std::abs(1.0 - std::pow(p.q, t)) < 1e-12)
      throw invalid_parameter("hahn_expand: q is (numerically) a root of unity of order <= k");

  // Σ_{i=0..k} (-1)^i [k i]_q q^(i(i-1)/2) g(σ^(k-i) z) over
  // q^(k(k-1)/2) ((q-1)z + c)^k, assembled over the common denominator
  // Π_m den(σ^m z).  The q^(k(k-1)/2) factor is what direct recursion of
  // the first difference produces (hand expansion at k = 2: the recursion
  // yields g(σ²) - (1+q)g(σ) + q·g over q·((q-1)z+c)²); hahn_iter is the
  // regression oracle pinning it.
  double aq = std::abs(p.q);
  cdd qd = to_cdd(p.q), cd = to_cdd(p.c);
  DPoly gnum = to_dpoly(g.num()), gden = to_dpoly(g.den());
  Poly abs_n = abs_coeffs_d(gnum), abs_d = abs_coeffs_d(gden);
  std::vector<DPoly> num_m(k + 1), den_m(k + 1);
  std::vector<Poly> abs_num_m(k + 1), abs_den_m(k + 1);
  for (int m = 0; m <= k; ++m) {
    cdd qm = cdd_pow(qd, m);
    cdd shift = (m == 0) ? cdd{} : cdd_mul(cd, cdd_q_integer(qd, m));
    num_m[m] = dcompose_affine(gnum, qm, shift);
    den_m[m] = dcompose_affine(gden, qm, shift);
    abs_num_m[m] = compose_affine(abs_n, std::pow(aq, m), cdd_abs(shift));
    abs_den_m[m] = compose_affine(abs_d, std::pow(aq, m), cdd_abs(shift));
  }

  DPoly total;
  Poly noise_env;
  bool negate = false;
  for (int i = 0; i <= k; ++i) {
    int m = k - i;
    cdd coef = cdd_mul(cdd_gauss_binomial(k, i, qd),
                       cdd_pow(qd, i * (i - 1) / 2));
    if (negate) coef = cdd_sub(cdd{}, coef);
    DPoly term = dscale(num_m[m], coef);
    Poly abs_term = Poly::constant(cdd_abs(coef)) * abs_num_m[m];
    for (int j = 0; j <= k; ++j) {
      if (j == m) continue;
      term = dmul(term, den_m[j]);
      abs_term *= abs_den_m[j];
    }
    total = dadd(std::move(total), term);
    noise_env += abs_term;
    negate = !negate;
  }
  dstrip_noise(total, noise_env);
  if (total.empty() || dmax_abs(total) <= 1e-25 * noise_env.max_abs_coeff())
    return RatFun();

  DPoly u{cd, cdd_sub(qd, to_cdd(1.0))};
  cdd bottom_scale = cdd_pow(qd, k * (k - 1) / 2);
  std::vector<DPoly> bottom_f;
  for (int i = 0; i < k; ++i) bottom_f.push_back(u);
  for (int j = 0; j <= k; ++j)
    if (den_m[j].size() > 1)
      bottom_f.push_back(den_m[j]);
    else if (!den_m[j].empty())
      bottom_scale = cdd_mul(bottom_scale, den_m[j][0]);

  // Candidate cancellation points: z0 from u^k, and σ^(-m)(ρ) over the input
  // poles.  Every term of the sum omits exactly one den(σ^j z) factor, so
  // the sum vanishes at x to at least M(x) - max_j m_j(x), where m_j(x) is
  // the order of den(σ^j z) at x and M their total; at the fixed point the
  // whole u^k additionally cancels when g has no pole there.  Deeper
  // accidental vanishing is probed numerically.
  struct Candidate {
    cdd location;
    int cap = 0;         // order available in the bottom
    int total_m = 0;     // M(x)
    int max_m = 0;       // max_j m_j(x)
  };
  std::vector<Candidate> cands;
  auto add_entry = [&cands](cdd x, int mult, bool from_den) {
    for (Candidate& c : cands) {
      if (same_point(c.location, x)) {
        c.cap += mult;
        if (from_den) {
          c.total_m += mult;
          c.max_m = std::max(c.max_m, mult);
        }
        return;
      }
    }
    Candidate c;
    c.location = x;
    c.cap = mult;
    if (from_den) {
      c.total_m = mult;
      c.max_m = mult;
    }
    cands.push_back(c);
  };
  cdd z0 = cdd_div(cd, cdd_sub(to_cdd(1.0), qd));
  add_entry(z0, k, false);
  int pole_order_z0 = 0;
  if (g.den().degree() >= 1) {
    for (const RootDD& r : dd_roots(g.den(), gden, tol)) {
      if (same_point(r.location, z0)) pole_order_z0 = r.mult;
      for (int m = 0; m <= k; ++m) {
        // σ^(-m)(ρ) = (ρ - c [m]_q) / q^m
        cdd shift = (m == 0) ? cdd{} : cdd_mul(cd, cdd_q_integer(qd, m));
        add_entry(cdd_div(cdd_sub(r.location, shift), cdd_pow(qd, m)), r.mult,
                  true);
      }
    }
  }
  for (const Candidate& r : cands) {
    int structural = r.total_m - r.max_m;
    if (same_point(r.location, z0) && pole_order_z0 == 0) structural += k;
    int cancel = std::min(
        r.cap, std::max(structural, vanish_order(total, r.location, r.cap)));
    if (cancel > 0) {
      total = ddeflate(total, r.location, cancel);
      remove_factor_root(bottom_f, bottom_scale, r.location, cancel);
    }
  }
  dstrip(total);
  DPoly bottom{bottom_scale};
  for (const DPoly& f : bottom_f) bottom = dmul(bottom, f);
  return RatFun::from_coprime(to_poly(total), to_poly(bottom));
}

RatFun hahn_reciprocal(const RatFun& g, const HahnParams& p, double tol) {
  p.require_operator_valid();
  if (g.is_zero())
    throw std::invalid_argument("hahn_reciprocal: g is identically zero");
  RatFun dg = hahn_diff(g, p, tol);
  RatFun shifted = compose_affine(g, p.q, p.c, tol);
  return RatFun(-(dg.num() * shifted.den() * g.den()),
                dg.den() * shifted.num() * g.num(), tol);
}

}  // namespace hahnev
