#include "hahnev/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hahnev {

namespace {

constexpr double kEps = 2.220446049250313e-16;

double frac(double x) { return x - std::floor(x); }

// Synthetic division of (ascending) coeffs by (z - r); returns remainder,
// quotient replaces the input (one shorter).  Stable for |r| <= 1.
cplx synth_forward(std::vector<cplx>& c, cplx r) {
  int d = static_cast<int>(c.size()) - 1;
  cplx t = c[d];
  for (int j = d - 1; j >= 0; --j) {
    cplx next = c[j] + r * t;
    c[j] = t;
    t = next;
  }
  c.pop_back();  // c[0..d-1] is now the quotient
  return t;
}

// Backward variant, stable for |r| > 1: the discrepancy lands on the leading
// coefficient (relative size ~ d*eps) instead of being amplified by |r|^d.
void synth_backward(std::vector<cplx>& c, cplx r) {
  int d = static_cast<int>(c.size()) - 1;
  std::vector<cplx> b(d);
  b[0] = -c[0] / r;
  for (int j = 1; j < d; ++j) b[j] = (b[j - 1] - c[j]) / r;
  c = std::move(b);
}

}  // namespace

void Poly::strip() {
  while (!coeffs_.empty() && coeffs_.back() == cplx(0.0)) coeffs_.pop_back();
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (const cplx& a : coeffs_) m = std::max(m, std::abs(a));
  return m;
}

Poly Poly::trimmed(double rel) const {
  return trimmed_abs(rel * max_abs_coeff());
}

Poly Poly::trimmed_abs(double floor_abs) const {
  if (coeffs_.empty()) return Poly();
  int keep = -1;
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) {
    if (std::abs(coeffs_[k]) > floor_abs) {
      keep = k;
      break;
    }
  }
  if (keep < 0) return Poly();
  std::vector<cplx> out(coeffs_.begin(), coeffs_.begin() + keep + 1);
  return Poly(std::move(out));
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<cplx> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    out[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Poly(std::move(out));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  strip();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  strip();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<cplx> out(coeffs_.size() + o.coeffs_.size() - 1, cplx(0.0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      out[i + j] += coeffs_[i] * o.coeffs_[j];
  coeffs_ = std::move(out);
  strip();
  return *this;
}

Poly& Poly::operator*=(cplx s) {
  if (s == cplx(0.0)) {
    coeffs_.clear();
    return *this;
  }
  for (cplx& a : coeffs_) a *= s;
  return *this;
}

Poly Poly::operator-() const {
  Poly out(*this);
  for (cplx& a : out.coeffs_) a = -a;
  return out;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator*(const Poly& a, const Poly& b) {
  Poly out(a);
  return out *= b;
}
Poly operator*(cplx s, Poly a) { return a *= s; }

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::invalid_argument("divrem: division by the zero polynomial");
  if (a.is_zero() || a.degree() < b.degree()) return {Poly(), a};
  std::vector<cplx> rem = a.coeffs();
  int m = a.degree(), n = b.degree();
  std::vector<cplx> q(m - n + 1, cplx(0.0));
  for (int k = m - n; k >= 0; --k) {
    cplx coef = rem[n + k] / b.leading();
    q[k] = coef;
    for (int j = 0; j < n; ++j) rem[j + k] -= coef * b.coeff(j);
    rem[n + k] = cplx(0.0);
  }
  rem.resize(n);
  return {Poly(std::move(q)), Poly(std::move(rem))};
}

cplx eval(const Poly& p, cplx z) {
  const auto& c = p.coeffs();
  if (c.empty()) return 0.0;
  cplx acc = c.back();
  for (int j = static_cast<int>(c.size()) - 2; j >= 0; --j) acc = acc * z + c[j];
  return acc;
}

std::pair<cplx, double> eval_with_scale(const Poly& p, cplx z) {
  const auto& c = p.coeffs();
  if (c.empty()) return {cplx(0.0), 0.0};
  double az = std::abs(z);
  cplx acc = c.back();
  double s = std::abs(c.back());
  for (int j = static_cast<int>(c.size()) - 2; j >= 0; --j) {
    acc = acc * z + c[j];
    s = s * az + std::abs(c[j]);
  }
  return {acc, s};
}

Poly compose_affine(const Poly& p, cplx alpha, cplx beta) {
  if (p.is_zero()) return Poly();
  Poly lin{beta, alpha};
  Poly acc = Poly::constant(p.leading());
  for (int k = p.degree() - 1; k >= 0; --k) {
    acc *= lin;
    acc += Poly::constant(p.coeff(k));
  }
  return acc;
}

std::vector<cplx> taylor_at(const Poly& p, cplx z0) {
  if (p.is_zero()) return {};
  std::vector<cplx> cur = p.coeffs();
  std::vector<cplx> out;
  out.reserve(cur.size());
  while (!cur.empty()) {
    if (cur.size() == 1) {
      out.push_back(cur[0]);
      break;
    }
    out.push_back(synth_forward(cur, z0));
  }
  return out;
}

int order_at(const Poly& p, cplx z0, double tol) {
  if (p.is_zero()) throw std::invalid_argument("order_at: zero polynomial");
  std::vector<cplx> shifted = taylor_at(p, z0);
  // Noise envelope of the shift: every stored coefficient carries up to
  // ~eps * max|coeff| of construction round-off (the polynomials arriving
  // here are products and compositions), and the shift amplifies the
  // degree-j noise by C(j,k)|z0|^(j-k).  Shifting the constant-max|coeff|
  // polynomial bounds exactly that.
  double max_c = p.max_abs_coeff();
  std::vector<cplx> flat(p.coeffs().size(), cplx(max_c));
  std::vector<cplx> envelope = taylor_at(Poly(std::move(flat)), std::abs(z0));
  double d = static_cast<double>(p.degree());
  double coeff_cut = tol * max_c;
  int order = 0;
  for (std::size_t k = 0; k + 1 < shifted.size(); ++k) {
    // The 64x headroom absorbs coefficient noise accumulated by chains of
    // polynomial products upstream, which runs a couple of orders above
    // one-operation round-off.
    double floor_k = 64.0 * (d + 1.0) * kEps * std::abs(envelope[k]);
    if (std::abs(shifted[k]) <= std::max(coeff_cut, floor_k))
      ++order;
    else
      break;
  }
  return order;
}

Poly deflate(const Poly& p, cplx r, int count) {
  std::vector<cplx> c = p.coeffs();
  for (int i = 0; i < count; ++i) {
    if (c.size() <= 1) return Poly();
    if (std::abs(r) <= 1.0)
      synth_forward(c, r);
    else
      synth_backward(c, r);
  }
  return Poly(std::move(c));
}

Poly from_roots(cplx lead, std::span<const PointMult> roots) {
  Poly acc = Poly::constant(lead);
  for (const PointMult& pm : roots)
    for (int i = 0; i < pm.mult; ++i) acc *= Poly{-pm.location, cplx(1.0)};
  return acc;
}

namespace {

struct Approximation {
  cplx z;
  double err;  // latest Newton-step magnitude: ~ distance to the root
};

// Deterministic start points from the upper convex hull of (k, log|a_k|):
// one circle per hull edge, radius (|a_k1|/|a_k2|)^(1/(k2-k1)).  Root moduli
// of operator-algebra polynomials span many orders of magnitude, and a
// single Cauchy-bound circle would need thousands of iterations to drift
// that far.
std::vector<cplx> hull_start_points(const std::vector<cplx>& monic) {
  int d = static_cast<int>(monic.size()) - 1;
  std::vector<std::pair<int, double>> pts;  // (k, log|a_k|), nonzero only
  for (int k = 0; k <= d; ++k)
    if (monic[k] != cplx(0.0)) pts.push_back({k, std::log(std::abs(monic[k]))});
  std::vector<std::pair<int, double>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      double cross = (b.first - a.first) * (pt.second - a.second) -
                     (pt.first - a.first) * (b.second - a.second);
      if (cross >= 0.0)
        hull.pop_back();  // b below the segment a-pt: not on the upper hull
      else
        break;
    }
    hull.push_back(pt);
  }
  std::vector<cplx> out;
  out.reserve(d);
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    auto [k1, y1] = hull[e];
    auto [k2, y2] = hull[e + 1];
    double radius = std::exp((y1 - y2) / (k2 - k1));
    int count = k2 - k1;
    for (int j = 0; j < count; ++j) {
      double angle = 2.0 * std::numbers::pi * (j + 0.5) / count + 0.42 +
                     0.7 * static_cast<double>(e);
      double rj =
          radius * (1.0 + 0.05 * (frac((j + 1) * 0.6180339887498949) - 0.5));
      out.push_back(std::polar(rj, angle));
    }
  }
  return out;
}

// Ehrlich-Aberth simultaneous iteration on a monic polynomial (deg >= 3
// callers; also fine for small degrees).
std::vector<Approximation> aberth(const std::vector<cplx>& monic) {
  int d = static_cast<int>(monic.size()) - 1;
  std::vector<cplx> start = hull_start_points(monic);
  std::vector<Approximation> pts(d);
  for (int j = 0; j < d; ++j)
    pts[j] = {start[j], std::abs(start[j]) + 1.0};

  std::vector<cplx> deriv(d);
  for (int k = 1; k <= d; ++k) deriv[k - 1] = static_cast<double>(k) * monic[k];
  std::vector<cplx> monic_copy = monic;
  Poly pm(std::move(monic_copy));
  Poly pd(std::move(deriv));

  const int cap = 500;
  for (int iter = 0; iter < cap; ++iter) {
    bool settled = true;
    for (int j = 0; j < d; ++j) {
      auto [value, scale] = eval_with_scale(pm, pts[j].z);
      double floor_ = (2.0 * d + 2.0) * kEps * scale;
      cplx slope = eval(pd, pts[j].z);
      if (std::abs(value) <= floor_) {
        // Residual at the round-off floor of evaluation: done here.
        if (slope != cplx(0.0))
          pts[j].err = std::min(pts[j].err, std::abs(value / slope) + kEps * (1.0 + std::abs(pts[j].z)));
        else
          pts[j].err = std::min(pts[j].err, 1e-8 * (1.0 + std::abs(pts[j].z)));
        continue;
      }
      if (slope == cplx(0.0)) {
        pts[j].z *= cplx(1.0 + 1e-6, 1e-6);
        settled = false;
        continue;
      }
      cplx newton = value / slope;
      cplx repel(0.0);
      for (int k = 0; k < d; ++k) {
        if (k == j) continue;
        cplx dz = pts[j].z - pts[k].z;
        if (dz == cplx(0.0)) dz = cplx(1e-100, 0.0);
        repel += 1.0 / dz;
      }
      cplx denom = 1.0 - newton * repel;
      cplx step = (std::abs(denom) < 1e-290) ? newton : newton / denom;
      pts[j].z -= step;
      pts[j].err = std::abs(step);
      if (std::abs(step) > 1e-15 * (1.0 + std::abs(pts[j].z))) settled = false;
    }
    if (settled) return pts;
  }
  std::vector<cplx> best(d);
  for (int j = 0; j < d; ++j) best[j] = pts[j].z;
  throw solver_failure("root solver hit the iteration cap", best);
}

struct Cluster {
  cplx center;
  int mult;
  double spread;
  bool exact_origin = false;
};

std::vector<Cluster> cluster_points(const std::vector<Approximation>& pts,
                                    double tol) {
  int n = static_cast<int>(pts.size());
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double gap = std::abs(pts[i].z - pts[j].z);
      double zmin = std::min(std::abs(pts[i].z), std::abs(pts[j].z));
      double radius = std::max(tol * (1.0 + zmin), 8.0 * (pts[i].err + pts[j].err));
      if (gap <= radius) parent[find(i)] = find(j);
    }
  std::vector<Cluster> out;
  for (int root = 0; root < n; ++root) {
    if (find(root) != root) continue;
    cplx sum(0.0);
    int count = 0;
    for (int i = 0; i < n; ++i)
      if (find(i) == root) {
        sum += pts[i].z;
        ++count;
      }
    cplx center = sum / static_cast<double>(count);
    double spread = 0.0;
    for (int i = 0; i < n; ++i)
      if (find(i) == root) spread = std::max(spread, std::abs(pts[i].z - center));
    out.push_back({center, count, spread, false});
  }
  return out;
}

// Newton refinement on p^(m-1): a root of multiplicity m of p is a simple
// root of that derivative, so this recovers full accuracy that the
// simultaneous iteration cannot reach for m >= 2.
cplx polish(const Poly& p, cplx x0, int mult, double spread, double tol) {
  Poly target = p;
  for (int i = 1; i < mult; ++i) target = target.derivative();
  Poly slope_poly = target.derivative();
  if (slope_poly.is_zero()) return x0;
  cplx best = x0;
  double best_val = std::abs(eval(target, x0));
  cplx x = x0;
  for (int it = 0; it < 30; ++it) {
    cplx f = eval(target, x);
    cplx fp = eval(slope_poly, x);
    if (fp == cplx(0.0)) break;
    x -= f / fp;
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) break;
    double v = std::abs(eval(target, x));
    if (v < best_val) {
      best_val = v;
      best = x;
    }
    if (v == 0.0) break;
  }
  double cap = std::max(16.0 * spread, 1e-3 * (1.0 + std::abs(x0)));
  return (std::abs(best - x0) <= cap) ? best : x0;
}

std::vector<cplx> quadratic_roots(cplx a, cplx b, cplx c) {
  if (c == cplx(0.0)) return {cplx(0.0), -b / a};
  cplx disc = b * b - 4.0 * a * c;
  cplx s = std::sqrt(disc);
  if ((std::conj(b) * s).real() < 0.0) s = -s;
  cplx qq = -0.5 * (b + s);
  return {qq / a, c / qq};
}

}  // namespace

std::vector<PointMult> find_roots(const Poly& p, double tol) {
  if (p.is_zero() || p.degree() < 1)
    throw std::invalid_argument("find_roots: degree must be >= 1");

  // Exact origin roots come from exactly-zero low coefficients.
  std::vector<cplx> c = p.coeffs();
  int origin_mult = 0;
  while (origin_mult < static_cast<int>(c.size()) - 1 && c[origin_mult] == cplx(0.0))
    ++origin_mult;
  c.erase(c.begin(), c.begin() + origin_mult);

  int d = static_cast<int>(c.size()) - 1;
  std::vector<Approximation> pts;
  if (d == 1) {
    pts.push_back({-c[0] / c[1], 0.0});
  } else if (d == 2) {
    for (cplx r : quadratic_roots(c[2], c[1], c[0])) pts.push_back({r, 0.0});
  } else if (d >= 3) {
    cplx lead = c.back();
    std::vector<cplx> monic(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) monic[k] = c[k] / lead;
    pts = aberth(monic);
  }

  std::vector<cplx> reduced_coeffs = c;
  Poly reduced(std::move(reduced_coeffs));
  std::vector<Cluster> clusters = d >= 1 ? cluster_points(pts, tol) : std::vector<Cluster>{};
  if (origin_mult > 0) clusters.push_back({cplx(0.0), origin_mult, 0.0, true});

  // Polish, then re-merge anything that polishing moved together.
  for (int pass = 0; pass < 3; ++pass) {
    for (Cluster& cl : clusters) {
      if (cl.exact_origin) continue;
      cl.center = polish(reduced, cl.center, cl.mult, cl.spread, tol);
    }
    bool merged = false;
    for (std::size_t i = 0; i < clusters.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < clusters.size() && !merged; ++j) {
        double gap = std::abs(clusters[i].center - clusters[j].center);
        double zmin = std::min(std::abs(clusters[i].center), std::abs(clusters[j].center));
        if (gap <= tol * (1.0 + zmin)) {
          Cluster a = clusters[i], b = clusters[j];
          Cluster m;
          m.exact_origin = a.exact_origin || b.exact_origin;
          m.mult = a.mult + b.mult;
          m.center = m.exact_origin ? cplx(0.0)
                                    : (a.center * static_cast<double>(a.mult) +
                                       b.center * static_cast<double>(b.mult)) /
                                          static_cast<double>(m.mult);
          m.spread = gap + a.spread + b.spread;
          clusters.erase(clusters.begin() + j);
          clusters[i] = m;
          merged = true;
        }
      }
    if (!merged) break;
  }

  // Residual acceptance on the original polynomial, in logs to dodge
  // overflow of (1+|z|)^deg at high degree.
  double max_c = p.max_abs_coeff();
  for (const Cluster& cl : clusters) {
    auto [value, scale] = eval_with_scale(p, cl.center);
    if (std::abs(value) <= (2.0 * p.degree() + 2.0) * kEps * scale) continue;
    double lhs = std::log(std::abs(value));
    double rhs = std::log(tol * max_c) + p.degree() * std::log1p(std::abs(cl.center));
    if (lhs > rhs) {
      std::vector<cplx> best;
      for (const Cluster& x : clusters) best.push_back(x.center);
      throw solver_failure("root residual check failed", best);
    }
  }

  std::vector<PointMult> out;
  out.reserve(clusters.size());
  for (const Cluster& cl : clusters) out.push_back({cl.center, cl.mult});
  std::sort(out.begin(), out.end(), [](const PointMult& a, const PointMult& b) {
    double ma = std::abs(a.location), mb = std::abs(b.location);
    if (ma != mb) return ma < mb;
    double aa = std::arg(a.location), ab = std::arg(b.location);
    if (aa != ab) return aa < ab;
    return a.mult < b.mult;
  });
  return out;
}

}  // namespace hahnev
