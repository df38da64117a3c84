#include "hahnev/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hahnev {

namespace {
void require_same_center(const PowerSeries& a, const PowerSeries& b) {
  double scale = 1.0 + std::abs(a.center());
  if (std::abs(a.center() - b.center()) > 1e-12 * scale)
    throw std::invalid_argument("series: centers do not match");
}

void require_centered_at_z0(const PowerSeries& a, const HahnParams& p) {
  cplx z0 = p.z0();
  if (std::abs(a.center() - z0) > 1e-12 * (1.0 + std::abs(z0)))
    throw std::invalid_argument("series: must be centered at z0 = c/(1-q)");
}
}  // namespace

PowerSeries::PowerSeries(cplx center, std::vector<cplx> coeffs)
    : center_(center), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty())
    throw std::invalid_argument("PowerSeries: needs at least a_0");
}

PowerSeries PowerSeries::constant(cplx center, cplx a0, int trunc) {
  std::vector<cplx> c(static_cast<std::size_t>(std::max(0, trunc)) + 1, cplx(0.0));
  c[0] = a0;
  return PowerSeries(center, std::move(c));
}

cplx PowerSeries::eval_w(cplx w) const {
  cplx acc = coeffs_.back();
  for (int j = static_cast<int>(coeffs_.size()) - 2; j >= 0; --j)
    acc = acc * w + coeffs_[j];
  return acc;
}

PowerSeries add(const PowerSeries& a, const PowerSeries& b) {
  require_same_center(a, b);
  int n = std::min(a.trunc(), b.trunc());
  std::vector<cplx> c(n + 1);
  for (int k = 0; k <= n; ++k) c[k] = a.coeff(k) + b.coeff(k);
  return PowerSeries(a.center(), std::move(c));
}

PowerSeries mul(const PowerSeries& a, const PowerSeries& b) {
  require_same_center(a, b);
  int n = std::min(a.trunc(), b.trunc());
  std::vector<cplx> c(n + 1, cplx(0.0));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) c[i + j] += a.coeff(i) * b.coeff(j);
  return PowerSeries(a.center(), std::move(c));
}

PowerSeries scale(const PowerSeries& a, cplx s) {
  std::vector<cplx> c = a.coeffs();
  for (cplx& x : c) x *= s;
  return PowerSeries(a.center(), std::move(c));
}

PowerSeries series_hahn(const PowerSeries& a, const HahnParams& p) {
  p.require_operator_valid();
  require_centered_at_z0(a, p);
  // At the fixed point: σ(z) - z0 = q w and (q-1)z + c = (q-1)w, so the
  // operator maps Σ a_n w^n to Σ [n]_q a_n w^(n-1).
  int n = a.trunc();
  if (n == 0) return PowerSeries::constant(a.center(), 0.0, 0);
  std::vector<cplx> c(n);
  for (int m = 0; m < n; ++m) c[m] = q_integer(m + 1, p.q) * a.coeff(m + 1);
  return PowerSeries(a.center(), std::move(c));
}

PowerSeries series_of_poly(const Poly& p, cplx center, int trunc) {
  if (trunc < 0) throw std::invalid_argument("series_of_poly: trunc < 0");
  std::vector<cplx> t = taylor_at(p, center);
  t.resize(static_cast<std::size_t>(trunc) + 1, cplx(0.0));
  return PowerSeries(center, std::move(t));
}

PowerSeries series_of_ratfun(const RatFun& g, cplx center, int trunc) {
  if (trunc < 0) throw std::invalid_argument("series_of_ratfun: trunc < 0");
  std::vector<cplx> n = taylor_at(g.num(), center);
  std::vector<cplx> d = taylor_at(g.den(), center);
  n.resize(static_cast<std::size_t>(trunc) + 1, cplx(0.0));
  d.resize(static_cast<std::size_t>(trunc) + 1, cplx(0.0));
  double dscale = g.den().max_abs_coeff() * std::pow(1.0 + std::abs(center),
                                                     std::max(0, g.den().degree()));
  if (std::abs(d[0]) <= 1e-13 * dscale)
    throw std::invalid_argument("series_of_ratfun: g has a pole at the center");
  std::vector<cplx> q(static_cast<std::size_t>(trunc) + 1);
  for (int k = 0; k <= trunc; ++k) {
    cplx acc = n[k];
    for (int j = 1; j <= k; ++j) acc -= d[j] * q[k - j];
    q[k] = acc / d[0];
  }
  return PowerSeries(center, std::move(q));
}

PowerSeries heq_solve(const std::vector<PowerSeries>& A,
                      const std::vector<cplx>& init, int trunc,
                      const HahnParams& p) {
  p.require_theorem_valid();
  int k = static_cast<int>(A.size());
  if (k < 1) throw std::invalid_argument("heq_solve: needs at least A_0");
  if (static_cast<int>(init.size()) != k)
    throw std::invalid_argument("heq_solve: init must prescribe a_0..a_{k-1}");
  if (trunc < k - 1) throw std::invalid_argument("heq_solve: trunc < k-1");
  cplx z0 = p.z0();
  for (const PowerSeries& a : A)
    if (std::abs(a.center() - z0) > 1e-12 * (1.0 + std::abs(z0)))
      throw std::invalid_argument("heq_solve: coefficients must be centered at z0");

  // (D^j g)_n = a_{n+j} Π_{t=1..j} [n+t]_q.  The w^n coefficient of the
  // equation pins a_{n+k} in terms of a_0..a_{n+k-1}; ascend in n.
  std::vector<cplx> a(static_cast<std::size_t>(trunc) + 1, cplx(0.0));
  for (int i = 0; i < k; ++i) a[i] = init[i];
  auto qprod = [&p](int from, int count) {
    cplx prod = 1.0;
    for (int t = 1; t <= count; ++t) prod *= q_integer(from + t, p.q);
    return prod;
  };
  for (int n = 0; n + k <= trunc; ++n) {
    cplx rhs = 0.0;
    for (int j = 0; j < k; ++j) {
      // Cauchy product (A_j · D^j g)_n = Σ_s (A_j)_s (D^j g)_{n-s}.
      int smax = std::min(n, A[j].trunc());
      for (int s = 0; s <= smax; ++s)
        rhs += A[j].coeff(s) * a[n - s + j] * qprod(n - s, j);
    }
    cplx lead = qprod(n, k);
    if (std::abs(lead) < 1e-300)
      throw invalid_parameter("heq_solve: [m]_q vanished (q a root of unity?)");
    a[n + k] = -rhs / lead;
  }
  return PowerSeries(z0, std::move(a));
}

std::vector<std::optional<cplx>> heq_residual(const std::vector<PowerSeries>& A,
                                              const PowerSeries& g,
                                              std::span<const cplx> points,
                                              const HahnParams& p) {
  int k = static_cast<int>(A.size());
  if (k < 1) throw std::invalid_argument("heq_residual: needs at least A_0");
  if (g.trunc() < k)
    throw std::invalid_argument("heq_residual: series truncated below order k");
  std::vector<PowerSeries> derivs;  // D^0 g .. D^k g
  derivs.push_back(g);
  for (int j = 1; j <= k; ++j) derivs.push_back(series_hahn(derivs.back(), p));
  std::vector<std::optional<cplx>> out;
  out.reserve(points.size());
  for (cplx z : points) {
    cplx w = z - g.center();
    cplx acc = derivs[k].eval_w(w);
    for (int j = 0; j < k; ++j)
      acc += A[j].eval_w(w) * derivs[j].eval_w(w);
    out.push_back(acc);
  }
  return out;
}

std::vector<std::optional<cplx>> heq_residual(const std::vector<PowerSeries>& A,
                                              const RatFun& g,
                                              std::span<const cplx> points,
                                              const HahnParams& p) {
  int k = static_cast<int>(A.size());
  if (k < 1) throw std::invalid_argument("heq_residual: needs at least A_0");
  std::vector<RatFun> derivs;
  derivs.push_back(g);
  for (int j = 1; j <= k; ++j) derivs.push_back(hahn_diff(derivs.back(), p));
  cplx z0 = p.z0();
  std::vector<std::optional<cplx>> out;
  out.reserve(points.size());
  for (cplx z : points) {
    cplx w = z - z0;
    std::optional<cplx> acc = eval(derivs[k], z);
    for (int j = 0; j < k && acc; ++j) {
      std::optional<cplx> v = eval(derivs[j], z);
      if (!v)
        acc.reset();
      else
        *acc += A[j].eval_w(w) * *v;
    }
    out.push_back(acc);
  }
  return out;
}

double radius_estimate(const PowerSeries& a) {
  std::vector<double> ratios;
  int n = a.trunc();
  for (int k = std::max(1, n / 2); k < n; ++k) {
    double lo = std::abs(a.coeff(k));
    double hi = std::abs(a.coeff(k + 1));
    if (lo > 0.0 && hi > 0.0) ratios.push_back(hi / lo);
  }
  if (ratios.empty()) return std::numeric_limits<double>::infinity();
  std::sort(ratios.begin(), ratios.end());
  double med = ratios[ratios.size() / 2];
  return med > 0.0 ? 1.0 / med : std::numeric_limits<double>::infinity();
}

}  // namespace hahnev
