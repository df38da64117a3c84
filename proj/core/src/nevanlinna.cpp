#include "hahnev/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hahnev {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// log|p(z)| without overflow: for |z| > 1 evaluate p(z)/z^deg by Horner in
// 1/z and add deg*log|z|.  -inf signals p(z) = 0.
double log_abs_eval(const Poly& p, cplx z) {
  if (p.is_zero()) return -std::numeric_limits<double>::infinity();
  double az = std::abs(z);
  if (az <= 1.0) return std::log(std::abs(eval(p, z)));
  cplx w = 1.0 / z;
  const auto& c = p.coeffs();
  cplx acc = c.front();
  for (std::size_t j = 1; j < c.size(); ++j) acc = acc * w + c[j];
  return p.degree() * std::log(az) + std::log(std::abs(acc));
}

struct CircleIntegrand {
  const Poly* top;
  const Poly* bottom;
  double r;

  double operator()(double theta) const {
    cplx z = std::polar(r, theta);
    double lt = log_abs_eval(*top, z);
    if (lt == -std::numeric_limits<double>::infinity()) return 0.0;
    double lb = log_abs_eval(*bottom, z);
    double v = lt - lb;
    if (!std::isfinite(v)) return 4000.0;  // node dead on a root; refined away
    return std::max(0.0, v);
  }
};

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(fa, flm, fm, m - a);
  double right = simpson(fm, frm, fb, b - m);
  if (depth <= 0) return left + right;
  if (std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  // Never demand less than the round-off of the values themselves, or the
  // recursion explodes into a full tree.
  double child_tol = std::max(0.5 * tol,
                              1e-16 * (std::abs(left) + std::abs(right) + 1e-300));
  return adaptive_simpson(f, a, m, fa, flm, fm, left, child_tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, child_tol, depth - 1);
}

template <typename F>
double integrate_segment(const F& f, double a, double b, double tol, int depth) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = simpson(fa, fm, fb, b - a);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, depth);
}

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

// Circle average of f with forced dyadic breakpoints toward the angles of
// roots sitting close to the contour: the adaptive estimator alone can step
// over a spike narrower than its probing grid.
template <typename F>
double circle_average(const F& f, std::span<const PointMult> near_top,
                      std::span<const PointMult> near_bottom, double r,
                      const QuadOptions& quad) {
  std::vector<double> breaks;
  double h = kTwoPi / quad.base_nodes;
  breaks.reserve(quad.base_nodes + 64);
  for (int k = 0; k < quad.base_nodes; ++k) breaks.push_back(k * h);
  auto add_ladder = [&](const PointMult& pm) {
    double rho = std::abs(pm.location);
    if (rho == 0.0) return;
    double gap = std::abs(rho - r) / r;
    if (gap > 0.25) return;
    double theta = wrap_angle(std::arg(pm.location));
    breaks.push_back(theta);
    for (double d = std::max(gap * 0.5, 1e-13); d < 2.0 * h; d *= 2.0) {
      breaks.push_back(wrap_angle(theta - d));
      breaks.push_back(wrap_angle(theta + d));
    }
  };
  for (const PointMult& pm : near_top) add_ladder(pm);
  for (const PointMult& pm : near_bottom) add_ladder(pm);
  std::sort(breaks.begin(), breaks.end());
  breaks.push_back(breaks.front() + kTwoPi);

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double a = breaks[i], b = breaks[i + 1];
    if (b - a < 1e-15) continue;
    // Per-segment budget proportional to width: the summed error stays near
    // abs_tol * 2π, i.e. abs_tol on the circle average.
    total += integrate_segment(f, a, b, quad.abs_tol * (b - a), quad.max_depth);
  }
  return total / kTwoPi;
}

double integrate_points(std::span<const PointMult> pts, double r) {
  double acc = 0.0;
  int n0 = 0;
  for (const PointMult& pm : pts) {
    double az = std::abs(pm.location);
    if (az <= kOriginTol)
      n0 += pm.mult;
    else if (az <= r)
      acc += pm.mult * std::log(r / az);
  }
  return acc + n0 * std::log(r);
}

double integrate_reduced(std::span<const ReducedPoint> pts, double r) {
  double acc = 0.0;
  int n0 = 0;
  for (const ReducedPoint& pm : pts) {
    double az = std::abs(pm.location);
    if (az <= kOriginTol)
      n0 += pm.reduced;
    else if (az <= r)
      acc += pm.reduced * std::log(r / az);
  }
  return acc + n0 * std::log(r);
}

double ls_slope(std::span<const double> x, std::span<const double> y) {
  double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("order_estimators: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace

std::vector<double> RadiusGrid::radii() const {
  if (!(r_min > 0.0) || !(r_max > r_min) || points < 2)
    throw std::invalid_argument("RadiusGrid: needs 0 < r_min < r_max, points >= 2");
  std::vector<double> out(points);
  double ratio = std::log(r_max / r_min);
  for (int j = 0; j < points; ++j)
    out[j] = r_min * std::exp(ratio * j / (points - 1));
  return out;
}

int count_points(const RatFun& g, double r, ExtValue a, double tol) {
  int n = 0;
  for (const PointMult& pm : a_points(g, a, tol))
    if (std::abs(pm.location) <= r) n += pm.mult;
  return n;
}

double integrated_count(const RatFun& g, double r, ExtValue a, double tol) {
  auto pts = a_points(g, a, tol);
  return integrate_points(pts, r);
}

ProximityKernel::ProximityKernel(const RatFun& g, ExtValue a, double tol) {
  if (a.is_inf()) {
    top_ = g.num();
    bottom_ = g.den();
    zero_top_ = top_.is_zero();
  } else {
    top_ = g.den();
    bottom_ = target_numerator(g, a.finite());
    if (bottom_.is_zero())
      throw degenerate_input("proximity: g is identically equal to the target");
  }
  if (top_.degree() >= 1) top_roots_ = find_roots(top_, tol);
  if (bottom_.degree() >= 1) bottom_roots_ = find_roots(bottom_, tol);
}

ProximityResult ProximityKernel::operator()(double r,
                                            const QuadOptions& quad) const {
  if (zero_top_) return {0.0, r, false};
  double r_used = r;
  bool nudged = false;
  for (int guard = 0; guard < 100; ++guard) {
    bool clash = false;
    auto near_circle = [&](const std::vector<PointMult>& pts) {
      for (const PointMult& pm : pts)
        if (std::abs(std::abs(pm.location) - r_used) <= 1e-9 * r_used) return true;
      return false;
    };
    if (near_circle(top_roots_) || near_circle(bottom_roots_)) clash = true;
    if (!clash) break;
    r_used += 1e-8 * r;
    nudged = true;
  }
  CircleIntegrand f{&top_, &bottom_, r_used};
  double value = circle_average(f, top_roots_, bottom_roots_, r_used, quad);
  return {value, r_used, nudged};
}

ProximityResult proximity(const RatFun& g, double r, ExtValue a,
                          const QuadOptions& quad, double tol) {
  return ProximityKernel(g, a, tol)(r, quad);
}

double characteristic(const RatFun& g, double r, const QuadOptions& quad,
                      double tol) {
  return proximity(g, r, ExtValue::inf(), quad, tol).value +
         integrated_count(g, r, ExtValue::inf(), tol);
}

HahnDerived::HahnDerived(const RatFun& g, const HahnParams& p, double tol)
    : dg(hahn_diff(g, p, tol)),
      recip(g.is_zero() ? RatFun() : hahn_reciprocal(g, p, tol)) {}

std::vector<ReducedPoint> hahn_reduced_points(const RatFun& g,
                                              const HahnDerived& d, ExtValue a,
                                              double tol) {
  std::vector<ReducedPoint> out;
  for (const PointMult& pm : a_points(g, a, tol)) {
    const RatFun& probe = a.is_inf() ? d.recip : d.dg;
    int mprime = probe.is_zero()
                     ? pm.mult
                     : std::max(0, order_at(probe, pm.location, tol));
    int reduced = pm.mult - std::min(pm.mult, mprime);
    out.push_back({pm.location, pm.mult, reduced});
  }
  return out;
}

int hahn_reduced_count(const RatFun& g, double r, ExtValue a,
                       const HahnParams& p, double tol) {
  HahnDerived d(g, p, tol);
  int n = 0;
  for (const ReducedPoint& rp : hahn_reduced_points(g, d, a, tol))
    if (std::abs(rp.location) <= r) n += rp.reduced;
  return n;
}

double hahn_reduced_integrated(const RatFun& g, double r, ExtValue a,
                               const HahnParams& p, double tol) {
  HahnDerived d(g, p, tol);
  auto pts = hahn_reduced_points(g, d, a, tol);
  return integrate_reduced(pts, r);
}

DefectEstimates defect_indices(const RatFun& g, ExtValue a,
                               const HahnParams& p, const RadiusGrid& grid,
                               const QuadOptions& quad, double tol) {
  if (g.is_constant()) throw degenerate_input("defect_indices: g is constant");
  std::vector<double> radii = grid.radii();
  if (radii.size() < 20)
    throw std::invalid_argument("defect_indices: grid needs >= 20 radii");
  std::size_t top_count = static_cast<std::size_t>(
      std::ceil(0.2 * static_cast<double>(radii.size())));

  ProximityKernel t_kernel(g, ExtValue::inf(), tol);
  auto poles = a_points(g, ExtValue::inf(), tol);
  auto targets = a_points(g, a, tol);
  HahnDerived d(g, p, tol);
  auto reduced = hahn_reduced_points(g, d, a, tol);

  double max_nt = -std::numeric_limits<double>::infinity();
  double min_theta = std::numeric_limits<double>::infinity();
  double max_nhat = -std::numeric_limits<double>::infinity();
  double t_top = 0.0;
  for (std::size_t i = radii.size() - top_count; i < radii.size(); ++i) {
    double r = radii[i];
    double T = t_kernel(r, quad).value + integrate_points(poles, r);
    double N = integrate_points(targets, r);
    double Nhat = integrate_reduced(reduced, r);
    t_top = T;
    if (T < 1e-6) continue;
    max_nt = std::max(max_nt, N / T);
    min_theta = std::min(min_theta, (N - Nhat) / T);
    max_nhat = std::max(max_nhat, Nhat / T);
  }
  if (t_top < 1e-6)
    throw degenerate_input("defect_indices: T(r,g) vanishes at the grid top");
  return {1.0 - max_nt, min_theta, 1.0 - max_nhat};
}

OrderEstimates order_estimators(std::span<const std::pair<double, double>> rT) {
  if (rT.size() < 10)
    throw std::invalid_argument("order_estimators: needs >= 10 rows");
  double rmin = rT.front().first, rmax = rT.front().first;
  for (const auto& [r, T] : rT) {
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  if (rmax / rmin < 0.999e4)
    throw std::invalid_argument("order_estimators: r must span >= 4 decades");

  std::vector<double> lx, llx, ly;
  for (std::size_t i = rT.size() / 2; i < rT.size(); ++i) {
    double r = rT[i].first, T = rT[i].second;
    if (r <= 1.5 || T <= 1e-12) continue;
    lx.push_back(std::log(r));
    llx.push_back(std::log(std::log(r)));
    ly.push_back(std::log(T));
  }
  if (lx.size() < 3)
    throw std::invalid_argument("order_estimators: too few usable rows in the top half");
  return {ls_slope(lx, ly), ls_slope(llx, ly)};
}

NevTable build_table(const RatFun& g, std::vector<ExtValue> targets,
                     const HahnParams& p, const RadiusGrid& grid,
                     const QuadOptions& quad, double slack_fraction,
                     double tol) {
  p.require_operator_valid();
  if (g.is_constant()) throw degenerate_input("build_table: g is constant");

  NevTable table;
  table.params = p;
  table.targets = targets;
  table.slack_fraction = slack_fraction;
  table.cluster_tol = tol;
  table.quad = quad;
  table.grid = grid;

  ProximityKernel t_kernel(g, ExtValue::inf(), tol);
  auto poles = a_points(g, ExtValue::inf(), tol);
  HahnDerived d(g, p, tol);

  std::vector<std::vector<PointMult>> target_pts;
  std::vector<std::vector<ReducedPoint>> target_reduced;
  for (const ExtValue& a : targets) {
    target_pts.push_back(a_points(g, a, tol));
    target_reduced.push_back(hahn_reduced_points(g, d, a, tol));
  }

  std::vector<PointMult> dg_poles, dg_zeros;
  if (!d.dg.is_zero()) {
    dg_poles = a_points(d.dg, ExtValue::inf(), tol);
    if (!d.dg.is_constant()) dg_zeros = a_points(d.dg, cplx(0.0), tol);
  }

  double l = static_cast<double>(targets.size());
  for (double r : grid.radii()) {
    NevRow row;
    row.r = r;
    ProximityResult m = t_kernel(r, quad);
    row.m = m.value;
    row.r_used = m.r_used;
    row.nudged = m.nudged;
    row.N = integrate_points(poles, r);
    row.T = row.m + row.N;
    double nhat_sum = 0.0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      row.target_N.push_back(integrate_points(target_pts[i], r));
      row.target_Nhat.push_back(integrate_reduced(target_reduced[i], r));
      nhat_sum += row.target_Nhat.back();
    }
    row.Nqc = 2.0 * row.N - integrate_points(dg_poles, r) +
              integrate_points(dg_zeros, r);
    row.slack = nhat_sum + slack_fraction * row.T - (l - 2.0) * row.T;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace hahnev
