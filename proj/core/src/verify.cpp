#include "hahnev/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hahnev/io.hpp"
#include "hahnev/parse.hpp"

namespace hahnev {

namespace {

std::map<std::string, std::string> base_config(const HahnParams& p,
                                               const RadiusGrid& grid,
                                               const VerifyOptions& opt) {
  return {
      {"q", format_complex(p.q)},
      {"c", format_complex(p.c)},
      {"z0", format_complex(p.z0())},
      {"r_min", format_double(grid.r_min)},
      {"r_max", format_double(grid.r_max)},
      {"grid_points", std::to_string(grid.points)},
      {"quad_base_nodes", std::to_string(opt.quad.base_nodes)},
      {"quad_abs_tol", format_double(opt.quad.abs_tol)},
      {"cluster_tol", format_double(opt.cluster_tol)},
      {"slack_fraction", format_double(opt.slack_fraction)},
  };
}

void require_distinct(const std::vector<ExtValue>& targets) {
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (std::size_t j = i + 1; j < targets.size(); ++j)
      if (targets[i].same_as(targets[j]))
        throw std::invalid_argument("targets must be distinct");
}

std::string target_list(const std::vector<ExtValue>& targets) {
  std::string out;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (i) out += ",";
    out += target_label(targets[i]);
  }
  return out;
}

double integrate_reduced_pts(const std::vector<ReducedPoint>& pts, double r) {
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

double integrate_pts(const std::vector<PointMult>& pts, double r) {
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

int count_reduced(const std::vector<ReducedPoint>& pts, double r) {
  int n = 0;
  for (const ReducedPoint& pm : pts)
    if (std::abs(pm.location) <= r) n += pm.reduced;
  return n;
}

}  // namespace

CheckReport check_lodl(const RatFun& g, const HahnParams& p, int k,
                       const RadiusGrid& grid, const VerifyOptions& opt) {
  p.require_theorem_valid();
  if (g.is_constant()) throw degenerate_input("check_lodl: g is constant");
  if (k < 1) throw std::invalid_argument("check_lodl: k must be >= 1");

  CheckReport rep;
  rep.name = "lodl";
  rep.config = base_config(p, grid, opt);
  rep.config["k"] = std::to_string(k);

  RatFun dkg = hahn_iter(g, k, p, opt.cluster_tol);
  RatFun ratio_fn = dkg / g;
  ProximityKernel m_kernel(ratio_fn, ExtValue::inf(), opt.cluster_tol);
  ProximityKernel t_kernel(g, ExtValue::inf(), opt.cluster_tol);
  auto poles = a_points(g, ExtValue::inf(), opt.cluster_tol);

  std::vector<double> radii = grid.radii();
  std::vector<double> ratios(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double r = radii[i];
    double m = m_kernel(r, opt.quad).value;
    double T = t_kernel(r, opt.quad).value + integrate_pts(poles, r);
    double ratio = (T > 1e-12) ? m / T
                               : (m <= 1e-12 ? 0.0
                                             : std::numeric_limits<double>::infinity());
    ratios[i] = ratio;
    CheckRow row;
    row.r = r;
    row.lhs = m;
    row.rhs = T;
    row.slack = ratio;
    row.extra["ratio"] = ratio;
    rep.rows.push_back(std::move(row));
  }

  // Top radius: ratio <= 0.02.  Top quarter: ratio nonincreasing.
  std::size_t n = radii.size();
  std::size_t quarter = n - std::max<std::size_t>(2, n / 4);
  bool pass = true;
  rep.rows.back().asserted = true;
  rep.rows.back().ok = ratios.back() <= 0.02;
  pass = pass && rep.rows.back().ok;
  for (std::size_t i = quarter; i + 1 < n; ++i) {
    rep.rows[i + 1].asserted = true;
    bool ok = ratios[i + 1] <= ratios[i] + 1e-9;
    rep.rows[i + 1].ok = rep.rows[i + 1].ok && ok;
    pass = pass && ok;
  }
  rep.pass = pass;
  return rep;
}

CheckReport check_smt(const RatFun& g, const std::vector<ExtValue>& targets,
                      const HahnParams& p, const RadiusGrid& grid,
                      const VerifyOptions& opt) {
  p.require_theorem_valid();
  if (g.is_constant()) throw degenerate_input("check_smt: g is constant");
  if (targets.size() < 2)
    throw std::invalid_argument("check_smt: needs at least two targets");
  require_distinct(targets);

  CheckReport rep;
  rep.name = "smt";
  rep.config = base_config(p, grid, opt);
  rep.config["targets"] = target_list(targets);

  HahnDerived d(g, p, opt.cluster_tol);
  ProximityKernel t_kernel(g, ExtValue::inf(), opt.cluster_tol);
  auto poles = a_points(g, ExtValue::inf(), opt.cluster_tol);
  std::vector<std::vector<PointMult>> pts;
  std::vector<std::vector<ReducedPoint>> reduced;
  for (const ExtValue& a : targets) {
    pts.push_back(a_points(g, a, opt.cluster_tol));
    reduced.push_back(hahn_reduced_points(g, d, a, opt.cluster_tol));
  }
  std::vector<PointMult> dg_poles, dg_zeros;
  if (!d.dg.is_zero()) {
    dg_poles = a_points(d.dg, ExtValue::inf(), opt.cluster_tol);
    if (!d.dg.is_constant()) dg_zeros = a_points(d.dg, cplx(0.0), opt.cluster_tol);
  }

  std::vector<double> radii = grid.radii();
  double r_assert = radii[radii.size() / 2];
  double l = static_cast<double>(targets.size());
  bool pass = true;
  for (double r : radii) {
    double T = t_kernel(r, opt.quad).value + integrate_pts(poles, r);
    double sum_n = 0.0, sum_nhat = 0.0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      sum_n += integrate_pts(pts[i], r);
      sum_nhat += integrate_reduced_pts(reduced[i], r);
    }
    double nqc = 2.0 * integrate_pts(poles, r) - integrate_pts(dg_poles, r) +
                 integrate_pts(dg_zeros, r);
    CheckRow row;
    row.r = r;
    row.lhs = (l - 2.0) * T;
    row.rhs = sum_nhat;
    row.slack = sum_nhat + opt.slack_fraction * T - (l - 2.0) * T;
    row.extra["T"] = T;
    row.extra["Nqc"] = nqc;
    row.extra["sumN_minus_Nqc"] = sum_n - nqc;
    row.asserted = r >= r_assert;
    row.ok = !row.asserted || row.slack >= -1e-9;
    pass = pass && row.ok;
    rep.rows.push_back(std::move(row));
  }
  rep.pass = pass;
  return rep;
}

CheckReport check_defect_sum(const RatFun& g,
                             const std::vector<ExtValue>& targets,
                             const HahnParams& p, const RadiusGrid& grid,
                             const VerifyOptions& opt) {
  p.require_theorem_valid();
  require_distinct(targets);

  CheckReport rep;
  rep.name = "defect-sum";
  rep.config = base_config(p, grid, opt);
  rep.config["targets"] = target_list(targets);

  double sum_dt = 0.0, sum_big = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    DefectEstimates e = defect_indices(g, targets[i], p, grid, opt.quad,
                                       opt.cluster_tol);
    CheckRow row;
    row.r = static_cast<double>(i);
    row.lhs = e.delta + e.theta;
    row.rhs = e.big_theta;
    row.extra["delta"] = e.delta;
    row.extra["theta"] = e.theta;
    row.extra["Theta"] = e.big_theta;
    rep.rows.push_back(std::move(row));
    rep.notes.push_back("target " + target_label(targets[i]) +
                        ": delta=" + format_double(e.delta) +
                        " theta=" + format_double(e.theta) +
                        " Theta=" + format_double(e.big_theta));
    sum_dt += e.delta + e.theta;
    sum_big += e.big_theta;
  }

  CheckRow first;
  first.r = -1.0;
  first.lhs = sum_dt;
  first.rhs = sum_big + 0.1;
  first.slack = first.rhs - first.lhs;
  first.asserted = true;
  first.ok = sum_dt <= sum_big + 0.1 + 1e-9;
  CheckRow second;
  second.r = -1.0;
  second.lhs = sum_big;
  second.rhs = 2.1;
  second.slack = second.rhs - second.lhs;
  second.asserted = true;
  second.ok = sum_big <= 2.1 + 1e-9;
  rep.pass = first.ok && second.ok;
  rep.rows.push_back(std::move(first));
  rep.rows.push_back(std::move(second));
  return rep;
}

CheckReport classify_picard(const RatFun& g, ExtValue a, const HahnParams& p,
                            const RadiusGrid& grid, const VerifyOptions& opt) {
  p.require_theorem_valid();
  if (g.is_constant()) throw degenerate_input("classify_picard: g is constant");

  CheckReport rep;
  rep.name = "picard";
  rep.config = base_config(p, grid, opt);
  rep.config["target"] = target_label(a);

  HahnDerived d(g, p, opt.cluster_tol);
  auto reduced = hahn_reduced_points(g, d, a, opt.cluster_tol);
  std::vector<double> radii = grid.radii();
  std::vector<int> counts;
  for (double r : radii) {
    int n = count_reduced(reduced, r);
    counts.push_back(n);
    CheckRow row;
    row.r = r;
    row.lhs = static_cast<double>(n);
    row.extra["nhat"] = static_cast<double>(n);
    rep.rows.push_back(std::move(row));
  }
  bool constant_tail = true;
  for (std::size_t i = radii.size() / 2; i + 1 < radii.size(); ++i)
    constant_tail = constant_tail && counts[i] == counts[i + 1];
  rep.classification = constant_tail ? "picard" : "not-picard";
  rep.notes.push_back(
      "rational test bed: the reduced count is eventually constant, so any "
      "finite grid reports picard once r_max passes the last counted point");
  rep.pass = true;
  return rep;
}

CheckReport compare_sharing(const RatFun& g, const RatFun& h,
                            const std::vector<ExtValue>& targets,
                            const HahnParams& p, const RadiusGrid& grid,
                            int bound, const VerifyOptions& opt) {
  p.require_theorem_valid();
  if (g.is_constant() || h.is_constant())
    throw degenerate_input("compare_sharing: functions must be nonconstant");
  if (targets.size() != 5)
    throw std::invalid_argument("compare_sharing: exactly five distinct targets required");
  require_distinct(targets);

  CheckReport rep;
  rep.name = "five-value";
  rep.config = base_config(p, grid, opt);
  rep.config["targets"] = target_list(targets);
  rep.config["bound"] = std::to_string(bound);

  HahnDerived dg(g, p, opt.cluster_tol);
  HahnDerived dh(h, p, opt.cluster_tol);
  std::vector<double> radii = grid.radii();

  int shared_count = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    auto eg = a_points(g, targets[i], opt.cluster_tol);
    auto eh = a_points(h, targets[i], opt.cluster_tol);
    // Multiset match within the cluster tolerance, multiplicities included.
    bool sets_equal = true;
    {
      std::vector<std::pair<cplx, int>> rest;
      for (const PointMult& pm : eh) rest.push_back({pm.location, pm.mult});
      for (const PointMult& pm : eg) {
        int need = pm.mult;
        for (auto& [loc, mult] : rest) {
          if (mult == 0) continue;
          if (std::abs(loc - pm.location) <=
              opt.cluster_tol * (1.0 + std::abs(loc))) {
            int take = std::min(need, mult);
            need -= take;
            mult -= take;
            if (need == 0) break;
          }
        }
        if (need != 0) sets_equal = false;
      }
      for (const auto& [loc, mult] : rest)
        if (mult != 0) sets_equal = false;
    }
    auto rg = hahn_reduced_points(g, dg, targets[i], opt.cluster_tol);
    auto rh = hahn_reduced_points(h, dh, targets[i], opt.cluster_tol);
    int max_diff = 0;
    for (double r : radii)
      max_diff = std::max(max_diff,
                          std::abs(count_reduced(rg, r) - count_reduced(rh, r)));
    bool shared = sets_equal && max_diff <= bound;
    shared_count += shared ? 1 : 0;
    CheckRow row;
    row.r = static_cast<double>(i);
    row.lhs = shared ? 1.0 : 0.0;
    row.rhs = static_cast<double>(max_diff);
    row.extra["shared"] = shared ? 1.0 : 0.0;
    row.extra["sets_equal"] = sets_equal ? 1.0 : 0.0;
    row.extra["max_nhat_discrepancy"] = static_cast<double>(max_diff);
    rep.rows.push_back(std::move(row));
    rep.notes.push_back("target " + target_label(targets[i]) + ": " +
                        (shared ? "shared" : "not shared"));
  }

  if (shared_count == 5) {
    bool identical = approx_equal(g, h, 1e-9);
    rep.classification = identical ? "5/5 shared; g == h"
                                   : "5/5 shared but g != h";
    CheckRow row;
    row.r = -1.0;
    row.lhs = 5.0;
    row.rhs = identical ? 1.0 : 0.0;
    row.asserted = true;
    row.ok = identical;
    rep.rows.push_back(std::move(row));
    rep.pass = identical;
  } else {
    rep.classification = std::to_string(shared_count) + "/5 shared";
    rep.pass = true;
  }
  return rep;
}

RatFun fermat_residual(const RatFun& f, const HahnParams& p, double tol) {
  p.require_operator_valid();
  if (f.is_constant())
    throw std::invalid_argument("fermat_residual: f must be nonconstant");
  RatFun df = hahn_diff(f, p, tol);
  return pow(f, 3, tol) + pow(df, 3, tol) - RatFun::constant(1.0);
}

bool residual_nonzero(const RatFun& g, double rel) {
  double scale = std::max(1.0, g.den().max_abs_coeff());
  return g.num().max_abs_coeff() > rel * scale;
}

}  // namespace hahnev
