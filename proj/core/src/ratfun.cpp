#include "hahnev/ratfun.hpp"

#include <cmath>

#include "dd_poly.hpp"

namespace hahnev {

namespace {
constexpr double kEps = 2.220446049250313e-16;

double coeff_envelope(const Poly& p, double az) {
  double env = 0.0, t = 1.0;
  for (int j = 0; j <= std::max(0, p.degree()); ++j) {
    env += t;
    t *= az;
    if (!std::isfinite(env)) break;
  }
  return env * p.max_abs_coeff();
}

// Fast vanishing test: |value| negligible against the user tolerance and
// against the floor set by coefficient-level round-off amplified through
// the evaluation, eps * max|coeff| * Σ|z|^j.
bool negligible_at(cplx value, cplx z, const Poly& p, double tol) {
  double av = std::abs(value);
  if (!std::isfinite(av)) return false;
  int deg = std::max(0, p.degree());
  double floor_ = std::max(tol * p.max_abs_coeff(),
                           (2.0 * deg + 2.0) * kEps * coeff_envelope(p, std::abs(z)));
  return av <= floor_;
}


}  // namespace

namespace {

// Shared normalization on the compensated kernel: trim against the caller's
// round-off floor, match numerator roots to denominator roots within the
// cluster tolerance, refine each side's root at kernel precision and deflate
// there.  Root positions refined this way sit ~1e-25 from the exact common
// root, so the cancelled factors agree between any two algebraic routes to
// the same function.
RatFun normalized_from_dd(ddk::DPoly num, ddk::DPoly den, double tol,
                          double zero_floor) {
  using namespace ddk;
  dstrip(num);
  dstrip(den);
  while (!num.empty() && cdd_abs(num.back()) <= zero_floor) num.pop_back();
  while (!den.empty() && cdd_abs(den.back()) <= zero_floor) den.pop_back();
  if (den.empty())
    throw std::invalid_argument("RatFun: denominator is the zero polynomial");
  if (num.empty() || dmax_abs(num) <= zero_floor) return RatFun();

  if (num.size() > 1 && den.size() > 1) {
    Poly num_d = to_poly(num), den_d = to_poly(den);
    std::vector<PointMult> nroots = find_roots(num_d, tol);
    std::vector<PointMult> droots = find_roots(den_d, tol);
    std::vector<int> nleft, dleft;
    for (const PointMult& r : nroots) nleft.push_back(r.mult);
    for (const PointMult& r : droots) dleft.push_back(r.mult);
    for (std::size_t i = 0; i < droots.size(); ++i) {
      for (std::size_t j = 0; j < nroots.size() && dleft[i] > 0; ++j) {
        if (nleft[j] == 0) continue;
        double gap = std::abs(nroots[j].location - droots[i].location);
        if (gap > tol * (1.0 + std::abs(droots[i].location))) continue;
        int cancel = std::min(nleft[j], dleft[i]);
        num = ddeflate(num, drefine(num, to_cdd(nroots[j].location), cancel),
                       cancel);
        den = ddeflate(den, drefine(den, to_cdd(droots[i].location), cancel),
                       cancel);
        nleft[j] -= cancel;
        dleft[i] -= cancel;
        if (num.size() <= 1 || den.size() <= 1) break;
      }
      if (num.size() <= 1 || den.size() <= 1) break;
    }
    while (!num.empty() && cdd_abs(num.back()) <= zero_floor) num.pop_back();
    while (!den.empty() && cdd_abs(den.back()) <= zero_floor) den.pop_back();
    if (num.empty()) return RatFun();
    if (den.empty()) den = {to_cdd(1.0)};
  }
  return RatFun::from_coprime(to_poly(num), to_poly(den));
}

}  // namespace

RatFun::RatFun(Poly num, Poly den, double tol, double zero_floor) {
  *this = normalized_from_dd(ddk::to_dpoly(num), ddk::to_dpoly(den), tol,
                             zero_floor);
}

RatFun RatFun::from_coprime(Poly num, Poly den) {
  if (den.is_zero())
    throw std::invalid_argument("RatFun: denominator is the zero polynomial");
  RatFun out;
  if (num.is_zero()) return out;
  cplx lc = den.leading();
  std::vector<cplx> nc = num.coeffs();
  std::vector<cplx> dc = den.coeffs();
  for (cplx& a : nc) a /= lc;
  for (cplx& a : dc) a /= lc;
  dc.back() = cplx(1.0);
  out.num_ = Poly(std::move(nc));
  out.den_ = Poly(std::move(dc));
  return out;
}

namespace {
// Round-off scale of the cross-multiplied numerator: anything at or below it
// is cancellation residue, not a function.
double sum_floor(const RatFun& a, const RatFun& b) {
  return 1e-26 * std::max(a.num().max_abs_coeff() * b.den().max_abs_coeff(),
                          b.num().max_abs_coeff() * a.den().max_abs_coeff());
}
}  // namespace

RatFun operator+(const RatFun& a, const RatFun& b) {
  using namespace ddk;
  DPoly na = to_dpoly(a.num()), da = to_dpoly(a.den());
  DPoly nb = to_dpoly(b.num()), db = to_dpoly(b.den());
  return normalized_from_dd(dadd(dmul(na, db), dmul(nb, da)), dmul(da, db),
                            kClusterTol, sum_floor(a, b));
}

RatFun operator-(const RatFun& a, const RatFun& b) {
  using namespace ddk;
  DPoly na = to_dpoly(a.num()), da = to_dpoly(a.den());
  DPoly nb = to_dpoly(b.num()), db = to_dpoly(b.den());
  return normalized_from_dd(dsub(dmul(na, db), dmul(nb, da)), dmul(da, db),
                            kClusterTol, sum_floor(a, b));
}

RatFun operator*(const RatFun& a, const RatFun& b) {
  using namespace ddk;
  return normalized_from_dd(dmul(to_dpoly(a.num()), to_dpoly(b.num())),
                            dmul(to_dpoly(a.den()), to_dpoly(b.den())),
                            kClusterTol, 0.0);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
  if (b.is_zero())
    throw std::invalid_argument("RatFun: division by the zero function");
  using namespace ddk;
  return normalized_from_dd(dmul(to_dpoly(a.num()), to_dpoly(b.den())),
                            dmul(to_dpoly(a.den()), to_dpoly(b.num())),
                            kClusterTol, 0.0);
}

RatFun operator-(const RatFun& a) { return RatFun(-a.num(), a.den()); }

RatFun operator*(cplx s, const RatFun& a) {
  return RatFun(s * a.num(), a.den());
}

RatFun operator+(const RatFun& a, cplx s) {
  return a + RatFun::constant(s);
}

RatFun operator-(const RatFun& a, cplx s) {
  return a - RatFun::constant(s);
}

RatFun pow(const RatFun& a, int n, double tol) {
  if (n == 0) return RatFun::constant(1.0);
  RatFun base = a;
  if (n < 0) {
    if (a.is_zero())
      throw std::invalid_argument("pow: negative power of the zero function");
    base = RatFun(a.den(), a.num(), tol);
    n = -n;
  }
  RatFun acc = RatFun::constant(1.0);
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = (n >>= 1) > 0 ? base * base : base;
  }
  return acc;
}

std::optional<cplx> eval(const RatFun& g, cplx z, double tol) {
  cplx nv = eval(g.num(), z);
  cplx dv = eval(g.den(), z);
  bool den_small = negligible_at(dv, z, g.den(), tol);
  if (!den_small) return nv / dv;
  bool num_small = g.num().is_zero() || negligible_at(nv, z, g.num(), tol);
  if (!num_small) return std::nullopt;  // pole
  if (g.num().is_zero()) return cplx(0.0);
  // Both negligible: decide by the deflated Taylor data at z.
  int kn = order_at(g.num(), z, tol);
  int kd = order_at(g.den(), z, tol);
  if (kn > kd) return cplx(0.0);
  if (kn < kd) return std::nullopt;
  return taylor_at(g.num(), z)[kn] / taylor_at(g.den(), z)[kd];
}

RatFun compose_affine(const RatFun& g, cplx alpha, cplx beta, double tol) {
  if (alpha == cplx(0.0))
    throw std::invalid_argument("compose_affine: alpha must be nonzero");
  return RatFun(compose_affine(g.num(), alpha, beta),
                compose_affine(g.den(), alpha, beta), tol);
}

Poly target_numerator(const RatFun& g, cplx a) {
  int top = std::max(g.num().degree(), g.den().degree());
  if (top < 0) top = 0;
  std::vector<cplx> out(static_cast<std::size_t>(top) + 1);
  bool any = false;
  int keep = -1;
  for (int j = top; j >= 0; --j) {
    cplx v = g.num().coeff(j) - a * g.den().coeff(j);
    double env = std::abs(g.num().coeff(j)) + std::abs(a) * std::abs(g.den().coeff(j));
    if (std::abs(v) <= 1e-14 * env) v = cplx(0.0);
    out[j] = v;
    if (!any && v != cplx(0.0)) {
      any = true;
      keep = j;
    }
  }
  if (!any) return Poly();
  out.resize(static_cast<std::size_t>(keep) + 1);
  return Poly(std::move(out));
}

std::vector<PointMult> a_points(const RatFun& g, ExtValue a, double tol) {
  if (a.is_inf()) {
    if (g.den().degree() < 1) return {};
    return find_roots(g.den(), tol);
  }
  Poly shifted = target_numerator(g, a.finite());
  if (shifted.is_zero()) throw degenerate_input("a_points: g is identically equal to the target");
  if (shifted.degree() < 1) return {};
  return find_roots(shifted, tol);
}

int order_at(const RatFun& g, cplx z0, double tol) {
  int n = g.num().is_zero() ? 0 : order_at(g.num(), z0, tol);
  int d = order_at(g.den(), z0, tol);
  return n - d;
}

namespace {
// Coefficient-wise |a| ⊛ |b| envelope of a product.
std::vector<double> abs_conv(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> out(a.coeffs().size() + b.coeffs().size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j)
      out[i + j] += std::abs(a.coeffs()[i]) * std::abs(b.coeffs()[j]);
  return out;
}
}  // namespace

bool approx_equal(const RatFun& a, const RatFun& b, double tol) {
  // Backward-error form: every coefficient of the cross-multiplied
  // difference must be below tol times its own construction magnitude, so
  // the verdict does not hinge on coefficients that happen to cancel.
  Poly diff = a.num() * b.den() - b.num() * a.den();
  if (diff.is_zero()) return true;
  std::vector<double> env1 = abs_conv(a.num(), b.den());
  std::vector<double> env2 = abs_conv(b.num(), a.den());
  double env_max = 0.0;
  for (double v : env1) env_max = std::max(env_max, v);
  for (double v : env2) env_max = std::max(env_max, v);
  if (env_max == 0.0) return false;
  for (int k = 0; k <= diff.degree(); ++k) {
    double env = 1e-6 * env_max;  // floor keeps fully-cancelled slots honest
    if (k < static_cast<int>(env1.size())) env += env1[k];
    if (k < static_cast<int>(env2.size())) env += env2[k];
    if (std::abs(diff.coeff(k)) > tol * env) return false;
  }
  return true;
}

bool approx_equal_coeffs(const RatFun& a, const RatFun& b, double tol) {
  if (a.num().degree() != b.num().degree() ||
      a.den().degree() != b.den().degree())
    return false;
  double scale = std::max({1.0, a.num().max_abs_coeff(), b.num().max_abs_coeff(),
                           a.den().max_abs_coeff(), b.den().max_abs_coeff()});
  for (int k = 0; k <= std::max(0, a.num().degree()); ++k)
    if (std::abs(a.num().coeff(k) - b.num().coeff(k)) > tol * scale) return false;
  for (int k = 0; k <= a.den().degree(); ++k)
    if (std::abs(a.den().coeff(k) - b.den().coeff(k)) > tol * scale) return false;
  return true;
}

}  // namespace hahnev
