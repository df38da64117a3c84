#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hahnev/hahn.hpp"
#include "hahnev/qcore.hpp"
#include "hahnev/ratfun.hpp"

namespace hahnev {

// Geometric radius grid r_j = r_min * (r_max/r_min)^(j/(points-1)).
// The default reproduces r = 2^(j/2), j = 0..40.
struct RadiusGrid {
  double r_min = 1.0;
  double r_max = 1048576.0;  // 2^20
  int points = 41;

  std::vector<double> radii() const;
};

struct QuadOptions {
  int base_nodes = 256;    // equispaced seed intervals on the circle
  double abs_tol = 1e-9;   // absolute budget for one circle average
  int max_depth = 48;
};

// n(r, g=a): number of solutions of g = a in |z| <= r, with multiplicity.
int count_points(const RatFun& g, double r, ExtValue a,
                 double tol = kClusterTol);

// N(r, g=a) in closed form from the root data:
//   Σ_{0<|z_j|<=r} m_j log(r/|z_j|) + n(0) log r.
double integrated_count(const RatFun& g, double r, ExtValue a,
                        double tol = kClusterTol);

// m(r, ·): circle average of log⁺|g| for a = ∞, of log⁺ 1/|g - a| for finite
// a.  Composite adaptive quadrature with forced dyadic refinement toward
// angles of zeros/poles close to the circle.  If r lies within 1e-9·r of a
// zero/pole modulus it is nudged outward by 1e-8·r and the nudge is reported.
struct ProximityResult {
  double value = 0.0;
  double r_used = 0.0;
  bool nudged = false;
};
ProximityResult proximity(const RatFun& g, double r, ExtValue a,
                          const QuadOptions& quad = {},
                          double tol = kClusterTol);

// T(r, g) = m(r, g) + N(r, g).
double characteristic(const RatFun& g, double r, const QuadOptions& quad = {},
                      double tol = kClusterTol);

// Reusable integrand for proximity values of one fixed (g, a) pair across
// many radii; building it once avoids re-solving for the root sets.
class ProximityKernel {
public:
  ProximityKernel(const RatFun& g, ExtValue a, double tol = kClusterTol);
  ProximityResult operator()(double r, const QuadOptions& quad = {}) const;

private:
  Poly top_, bottom_;
  std::vector<PointMult> top_roots_, bottom_roots_;
  bool zero_top_ = false;
};

// D g and D(1/g) computed once for the reduced counting functions.
struct HahnDerived {
  HahnDerived(const RatFun& g, const HahnParams& p, double tol = kClusterTol);
  RatFun dg;
  RatFun recip;  // D(1/g); the zero function when g ≡ 0 is impossible here
};

// The point set behind n̂: each solution z of g = a with multiplicity n
// carries the reduced weight n - min(n, m'), where m' is the vanishing order
// at z of D g (finite a) or of D(1/g) (a = ∞), clamped to >= 0.
struct ReducedPoint {
  cplx location;
  int mult = 0;     // n
  int reduced = 0;  // n - min(n, m')
};
std::vector<ReducedPoint> hahn_reduced_points(const RatFun& g,
                                              const HahnDerived& d, ExtValue a,
                                              double tol = kClusterTol);

// n̂_{q,c}(r, g=a) and N̂_{q,c}(r, g=a).
int hahn_reduced_count(const RatFun& g, double r, ExtValue a,
                       const HahnParams& p, double tol = kClusterTol);
double hahn_reduced_integrated(const RatFun& g, double r, ExtValue a,
                               const HahnParams& p, double tol = kClusterTol);

// Finite-radius proxies of the defect, multiplicity and ramification indices
// over the top 20% of the grid:
//   δ̂ = 1 - max N/T,  θ̂ = min (N - N̂)/T,  Θ̂ = 1 - max N̂/T.
// One-sided estimates of the limsup/liminf definitions, never exact limits.
// The grid must have at least 20 radii; T below 1e-6 at the top is rejected.
struct DefectEstimates {
  double delta = 0.0;
  double theta = 0.0;
  double big_theta = 0.0;
};
DefectEstimates defect_indices(const RatFun& g, ExtValue a,
                               const HahnParams& p, const RadiusGrid& grid,
                               const QuadOptions& quad = {},
                               double tol = kClusterTol);

// Least-squares slopes over the top half of the rows: log T against log r
// (order) and against log log r (logarithmic order).  Needs >= 10 rows
// spanning at least 4 decades in r.
struct OrderEstimates {
  double rho = 0.0;
  double rho_log = 0.0;
};
OrderEstimates order_estimators(std::span<const std::pair<double, double>> rT);

// One table row per radius; the per-target columns follow the order of the
// `targets` list handed to build_table.
struct NevRow {
  double r = 0.0;
  double r_used = 0.0;  // differs from r only on nudged rows
  bool nudged = false;
  double m = 0.0;
  double N = 0.0;
  double T = 0.0;
  std::vector<double> target_N;
  std::vector<double> target_Nhat;
  double Nqc = 0.0;   // 2N(r,g) - N(r,Dg) + N(r, Dg=0)
  double slack = 0.0; // Σ N̂ + slack_fraction·T - (l-2)·T
};

struct NevTable {
  HahnParams params{};
  std::vector<ExtValue> targets;
  double slack_fraction = kSlackFraction;
  double cluster_tol = kClusterTol;
  QuadOptions quad{};
  RadiusGrid grid{};
  std::vector<NevRow> rows;
};

NevTable build_table(const RatFun& g, std::vector<ExtValue> targets,
                     const HahnParams& p, const RadiusGrid& grid,
                     const QuadOptions& quad = {},
                     double slack_fraction = kSlackFraction,
                     double tol = kClusterTol);

}  // namespace hahnev
