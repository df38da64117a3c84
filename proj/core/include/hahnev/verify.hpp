#pragma once

#include <map>
#include <string>
#include <vector>

#include "hahnev/nevanlinna.hpp"

namespace hahnev {

// The o(T) error terms and the "outside an exceptional set" clauses of the
// inequalities cannot be exhibited numerically; the checks stand in for them
// with (a) a slack_fraction·T allowance and (b) assertions restricted to the
// upper part of the radius grid.  Every report echoes those surrogates.
struct VerifyOptions {
  double cluster_tol = kClusterTol;
  QuadOptions quad{};
  double slack_fraction = kSlackFraction;
};

struct CheckRow {
  double r = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool asserted = false;  // whether this row participates in the verdict
  bool ok = true;
  std::map<std::string, double> extra;  // inspection columns
};

struct CheckReport {
  std::string name;
  bool pass = false;
  std::string classification;  // e.g. "picard" / "not-picard", share summary
  std::vector<CheckRow> rows;
  std::vector<std::string> notes;
  std::map<std::string, std::string> config;  // full tolerance/grid echo
};

// m(r, D^k g / g) = o(T(r, g)) surrogate: rows carry the ratio; asserts
// ratio <= 0.02 at the top radius and nonincreasing ratios over the top
// quarter of the grid.  Requires 0 < |q| < 1 and nonconstant g.
CheckReport check_lodl(const RatFun& g, const HahnParams& p, int k,
                       const RadiusGrid& grid, const VerifyOptions& opt = {});

// Second-main-theorem surrogate for targets a_1..a_l (l >= 2, distinct, ∞
// allowed): slack = Σ N̂_{q,c}(r, g=a_i) + slack_fraction·T - (l-2)·T must be
// >= 0 for r at or above the grid midpoint.  Rows also carry the
// intermediate Σ N - N_{q,c}(r) quantity for inspection.
CheckReport check_smt(const RatFun& g, const std::vector<ExtValue>& targets,
                      const HahnParams& p, const RadiusGrid& grid,
                      const VerifyOptions& opt = {});

// Defect-relation surrogate: Σ(δ̂ + θ̂) <= Σ Θ̂ + 0.1 and Σ Θ̂ <= 2.1.
CheckReport check_defect_sum(const RatFun& g,
                             const std::vector<ExtValue>& targets,
                             const HahnParams& p, const RadiusGrid& grid,
                             const VerifyOptions& opt = {});

// a is classified "picard" iff n̂_{q,c}(r, g=a) is constant over the top half
// of the grid.  For rational g the count is eventually constant, so any
// finite grid classifies every value as picard once r_max passes the last
// point; the report carries that caveat.
CheckReport classify_picard(const RatFun& g, ExtValue a, const HahnParams& p,
                            const RadiusGrid& grid,
                            const VerifyOptions& opt = {});

// Five-value comparator.  Per target: the solution sets of g = a and h = a
// (with multiplicity, matched within the cluster tolerance) and the grid
// discrepancy |n̂(r,g=a) - n̂(r,h=a)|; the target is shared iff the sets
// agree and the discrepancy stays <= bound.  If all five targets are shared
// the report asserts g ≡ h.
CheckReport compare_sharing(const RatFun& g, const RatFun& h,
                            const std::vector<ExtValue>& targets,
                            const HahnParams& p, const RadiusGrid& grid,
                            int bound = 0, const VerifyOptions& opt = {});

// f^3 + (D f)^3 - 1, normalized.  Nonconstant f only.  A vanishing residual
// would exhibit a nonconstant solution of f³ + (Df)³ = 1.
RatFun fermat_residual(const RatFun& f, const HahnParams& p,
                       double tol = kClusterTol);

// Whether g is nonzero beyond round-off: some numerator coefficient exceeds
// rel * max(1, max|coeff|).
bool residual_nonzero(const RatFun& g, double rel = 1e-9);

}  // namespace hahnev
