#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hahnev/hahn.hpp"
#include "hahnev/io.hpp"
#include "hahnev/parse.hpp"
#include "hahnev/series.hpp"
#include "hahnev/verify.hpp"

namespace hahnev::cli {

namespace {

struct RawCommon {
  std::string q;
  std::string c = "0";
  double rmin = 1.0;
  double rmax = 1048576.0;
  int grid = 41;
  int theta = 256;
  double quad_tol = kQuadTol;
  double cluster_tol = kClusterTol;
  double slack_fraction = kSlackFraction;
  std::string format = "csv";
  std::string out;
  int precision = 15;
};

void add_common(CLI::App* cmd, RawCommon& rc) {
  cmd->add_option("--q", rc.q, "operator parameter q, complex \"a+bi\"")
      ->required();
  cmd->add_option("--c", rc.c, "operator parameter c, complex \"a+bi\"");
  cmd->add_option("--rmin", rc.rmin, "smallest grid radius");
  cmd->add_option("--rmax", rc.rmax, "largest grid radius");
  cmd->add_option("--grid", rc.grid, "number of geometric grid radii");
  cmd->add_option("--theta", rc.theta, "base circle-quadrature nodes");
  cmd->add_option("--quad-tol", rc.quad_tol, "absolute quadrature budget");
  cmd->add_option("--cluster-tol", rc.cluster_tol,
                  "root clustering tolerance (the pipeline sensitivity knob)");
  cmd->add_option("--slack-fraction", rc.slack_fraction,
                  "fraction of T standing in for o(T) terms");
  cmd->add_option("--format", rc.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", rc.out, "output file (default: stdout)");
  cmd->add_option("--precision", rc.precision, "printed coefficient digits");
}

RunConfig make_config(const RawCommon& rc) {
  RunConfig cfg;
  cfg.q = parse_complex(rc.q);
  cfg.c = parse_complex(rc.c);
  if (!(rc.rmin > 0.0) || !(rc.rmin < rc.rmax))
    throw std::invalid_argument("need 0 < rmin < rmax");
  if (rc.grid < 2) throw std::invalid_argument("need grid >= 2");
  cfg.grid = RadiusGrid{rc.rmin, rc.rmax, rc.grid};
  cfg.quad = QuadOptions{rc.theta, rc.quad_tol, 48};
  cfg.cluster_tol = rc.cluster_tol;
  cfg.slack_fraction = rc.slack_fraction;
  cfg.format = rc.format;
  cfg.out_path = rc.out;
  cfg.precision = rc.precision;
  return cfg;
}

HahnParams params_of(const RunConfig& cfg, bool theorem) {
  HahnParams p{cfg.q, cfg.c};
  p.require_operator_valid();
  if (theorem) p.require_theorem_valid();
  return p;
}

std::vector<ExtValue> parse_targets(const std::string& list) {
  std::vector<ExtValue> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t comma = list.find(',', start);
    std::string piece = list.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!piece.empty()) out.push_back(parse_target(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty target list");
  return out;
}

std::vector<std::string> split_list(const std::string& list) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t comma = list.find(',', start);
    std::string piece = list.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!piece.empty()) out.push_back(piece);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void emit(const std::string& payload, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file " + cfg.out_path);
  f << payload;
}

VerifyOptions verify_options(const RunConfig& cfg) {
  VerifyOptions opt;
  opt.cluster_tol = cfg.cluster_tol;
  opt.quad = cfg.quad;
  opt.slack_fraction = cfg.slack_fraction;
  return opt;
}

int emit_report(const CheckReport& rep, const RunConfig& cfg,
                std::ostream& out) {
  emit(report_json(rep), cfg, out);
  return rep.pass ? 0 : 3;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "hahnev: the Hahn difference operator D_{q,c} g(z) = "
      "(g(qz+c) - g(z))/((q-1)z + c) on rational functions, with "
      "Nevanlinna-type counting machinery and theorem checks"};
  app.footer(
      "Function expressions use the variable z, complex literals like "
      "\"2i\" or \"1.5-2i\", operators + - * / and integer powers via ^.\n"
      "Example: hahnev diff --fn \"(z^2+1)/(z-2)\" --q 0.5 --c 1 --k 1");
  app.require_subcommand(1);

  RawCommon rc_diff, rc_table, rc_smt, rc_lodl, rc_def, rc_pic, rc_share,
      rc_fermat, rc_heq;
  std::string fn, fn2, targets_raw, target_raw, coeffs_raw, init_raw,
      points_raw;
  int k_diff = 1, k_lodl = 1, bound = 0, order = 16;

  CLI::App* diff = app.add_subcommand("diff", "print D^k g as an expression");
  diff->add_option("--fn", fn, "rational function g")->required();
  diff->add_option("--k", k_diff, "operator iterations")->check(CLI::PositiveNumber);
  add_common(diff, rc_diff);

  CLI::App* table = app.add_subcommand(
      "table", "per-radius m/N/T and Hahn counting columns as CSV or JSON");
  table->add_option("--fn", fn, "rational function g")->required();
  table->add_option("--targets", targets_raw,
                    "comma list of target values (finite complex or inf)");
  add_common(table, rc_table);

  CLI::App* verify = app.add_subcommand("verify", "run a theorem check");
  verify->require_subcommand(1);

  CLI::App* smt = verify->add_subcommand(
      "smt", "(l-2)T <= sum of reduced counting functions + slack");
  smt->add_option("--fn", fn, "rational function g")->required();
  smt->add_option("--targets", targets_raw, "l >= 2 distinct targets")->required();
  add_common(smt, rc_smt);

  CLI::App* lodl = verify->add_subcommand(
      "lodl", "m(r, D^k g / g) small against T(r, g) on the upper grid");
  lodl->add_option("--fn", fn, "rational function g")->required();
  lodl->add_option("--k", k_lodl, "operator iterations")->check(CLI::PositiveNumber);
  add_common(lodl, rc_lodl);

  CLI::App* defects = verify->add_subcommand(
      "defects", "defect-relation sums over the target list");
  defects->add_option("--fn", fn, "rational function g")->required();
  defects->add_option("--targets", targets_raw, "target values")->required();
  add_common(defects, rc_def);

  CLI::App* picard = verify->add_subcommand(
      "picard", "is the target's reduced count eventually constant?");
  picard->add_option("--fn", fn, "rational function g")->required();
  picard->add_option("--target", target_raw, "single target value")->required();
  add_common(picard, rc_pic);

  CLI::App* share = verify->add_subcommand(
      "share", "five-value comparison of two functions");
  share->add_option("--fn", fn, "first function g")->required();
  share->add_option("--fn2", fn2, "second function h")->required();
  share->add_option("--targets", targets_raw, "exactly five distinct targets")
      ->required();
  share->add_option("--bound", bound, "allowed reduced-count discrepancy");
  add_common(share, rc_share);

  CLI::App* fermat = verify->add_subcommand(
      "fermat", "residual of f^3 + (Df)^3 = 1 must be nonzero");
  fermat->add_option("--fn", fn, "rational function f")->required();
  add_common(fermat, rc_fermat);

  CLI::App* heq = app.add_subcommand(
      "solve-heq", "power-series solution of a linear Hahn difference equation");
  heq->add_option("--coeffs", coeffs_raw,
                  "comma list A_0,...,A_{k-1} of coefficient expressions")
      ->required();
  heq->add_option("--init", init_raw, "comma list of a_0,...,a_{k-1}")->required();
  heq->add_option("--order", order, "truncation order of the solution");
  heq->add_option("--points", points_raw,
                  "residual sample offsets w (comma list; default from the "
                  "empirical radius)");
  add_common(heq, rc_heq);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (diff->parsed()) {
      RunConfig cfg = make_config(rc_diff);
      HahnParams p = params_of(cfg, false);
      RatFun g = parse_expr(fn, cfg.cluster_tol);
      RatFun d = hahn_iter(g, k_diff, p, cfg.cluster_tol);
      emit(format_expr(d, cfg.precision) + "\n", cfg, out);
      return 0;
    }
    if (table->parsed()) {
      RunConfig cfg = make_config(rc_table);
      HahnParams p = params_of(cfg, false);
      RatFun g = parse_expr(fn, cfg.cluster_tol);
      std::vector<ExtValue> targets =
          targets_raw.empty() ? std::vector<ExtValue>{ExtValue::inf()}
                              : parse_targets(targets_raw);
      NevTable t = build_table(g, targets, p, cfg.grid, cfg.quad,
                               cfg.slack_fraction, cfg.cluster_tol);
      if (cfg.format == "json") {
        emit(table_json(t), cfg, out);
      } else {
        std::ostringstream ss;
        write_table_csv(t, ss);
        emit(ss.str(), cfg, out);
      }
      return 0;
    }
    if (smt->parsed()) {
      RunConfig cfg = make_config(rc_smt);
      HahnParams p = params_of(cfg, true);
      RatFun g = parse_expr(fn, cfg.cluster_tol);
      return emit_report(
          check_smt(g, parse_targets(targets_raw), p, cfg.grid, verify_options(cfg)),
          cfg, out);
    }
    if (lodl->parsed()) {
      RunConfig cfg = make_config(rc_lodl);
      HahnParams p = params_of(cfg, true);
      RatFun g = parse_expr(fn, cfg.cluster_tol);
      return emit_report(check_lodl(g, p, k_lodl, cfg.grid, verify_options(cfg)),
                         cfg, out);
    }
    if (defects->parsed()) {
      RunConfig cfg = make_config(rc_def);
      HahnParams p = params_of(cfg, true);
      RatFun g = parse_expr(fn, cfg.cluster_tol);
      return emit_report(check_defect_sum(g, parse_targets(targets_raw), p,
                                          cfg.grid, verify_options(cfg)),
                         cfg, out);
    }
    if (picard->parsed()) {
      RunConfig cfg = make_config(rc_pic);
      HahnParams p = params_of(cfg, true);
      RatFun g = parse_expr(fn, cfg.cluster_tol);
      return emit_report(classify_picard(g, parse_target(target_raw), p,
                                         cfg.grid, verify_options(cfg)),
                         cfg, out);
    }
    if (share->parsed()) {
      RunConfig cfg = make_config(rc_share);
      HahnParams p = params_of(cfg, true);
      RatFun g = parse_expr(fn, cfg.cluster_tol);
      RatFun h = parse_expr(fn2, cfg.cluster_tol);
      return emit_report(compare_sharing(g, h, parse_targets(targets_raw), p,
                                         cfg.grid, bound, verify_options(cfg)),
                         cfg, out);
    }
    if (fermat->parsed()) {
      RunConfig cfg = make_config(rc_fermat);
      HahnParams p = params_of(cfg, false);
      RatFun f = parse_expr(fn, cfg.cluster_tol);
      RatFun residual = fermat_residual(f, p, cfg.cluster_tol);
      CheckReport rep;
      rep.name = "fermat";
      rep.config["q"] = format_complex(p.q);
      rep.config["c"] = format_complex(p.c);
      rep.config["cluster_tol"] = format_double(cfg.cluster_tol);
      rep.config["fn"] = fn;
      bool nonzero = residual_nonzero(residual);
      CheckRow row;
      row.lhs = residual.num().max_abs_coeff();
      row.rhs = 1e-9 * std::max(1.0, residual.den().max_abs_coeff());
      row.slack = row.lhs - row.rhs;
      row.asserted = true;
      row.ok = nonzero;
      rep.rows.push_back(row);
      rep.notes.push_back("residual = " + format_expr(residual, cfg.precision));
      rep.classification = nonzero ? "no solution on this input" : "residual vanished";
      rep.pass = nonzero;
      return emit_report(rep, cfg, out);
    }
    if (heq->parsed()) {
      RunConfig cfg = make_config(rc_heq);
      HahnParams p = params_of(cfg, true);
      cplx z0 = p.z0();
      std::vector<PowerSeries> A;
      for (const std::string& piece : split_list(coeffs_raw))
        A.push_back(series_of_ratfun(parse_expr(piece, cfg.cluster_tol), z0, order));
      std::vector<cplx> init;
      for (const std::string& piece : split_list(init_raw))
        init.push_back(parse_complex(piece));
      PowerSeries sol = heq_solve(A, init, order, p);

      double radius = radius_estimate(sol);
      double base = std::isfinite(radius) ? radius : 1.0;
      std::vector<cplx> points;
      if (points_raw.empty()) {
        for (double f : {0.05, 0.1, 0.2}) points.push_back(z0 + f * base);
      } else {
        for (const std::string& piece : split_list(points_raw))
          points.push_back(z0 + parse_complex(piece));
      }
      auto residuals = heq_residual(A, sol, points, p);

      if (cfg.format == "json") {
        std::ostringstream ss;
        ss << "{\n  \"kind\": \"heq-solution\",\n";
        ss << "  \"q\": \"" << format_complex(p.q) << "\",\n";
        ss << "  \"c\": \"" << format_complex(p.c) << "\",\n";
        ss << "  \"z0\": \"" << format_complex(z0) << "\",\n";
        ss << "  \"order\": " << order << ",\n";
        ss << "  \"radius_estimate\": "
           << (std::isfinite(radius) ? format_double(radius) : "\"inf\"") << ",\n";
        ss << "  \"coefficients\": [";
        for (int n = 0; n <= sol.trunc(); ++n)
          ss << (n ? ", " : "") << "[" << format_double(sol.coeff(n).real())
             << ", " << format_double(sol.coeff(n).imag()) << "]";
        ss << "],\n  \"residuals\": [";
        for (std::size_t i = 0; i < points.size(); ++i) {
          ss << (i ? ", " : "") << "{\"w\": \""
             << format_complex(points[i] - z0) << "\", \"value\": ";
          if (residuals[i])
            ss << "\"" << format_complex(*residuals[i]) << "\"";
          else
            ss << "\"pole\"";
          ss << "}";
        }
        ss << "]\n}\n";
        emit(ss.str(), cfg, out);
      } else {
        std::ostringstream ss;
        ss << "n,re,im,abs_ratio\n";
        for (int n = 0; n <= sol.trunc(); ++n) {
          double ratio = 0.0;
          if (n > 0 && std::abs(sol.coeff(n - 1)) > 0.0)
            ratio = std::abs(sol.coeff(n)) / std::abs(sol.coeff(n - 1));
          ss << n << ',' << format_double(sol.coeff(n).real()) << ','
             << format_double(sol.coeff(n).imag()) << ','
             << format_double(ratio) << '\n';
        }
        emit(ss.str(), cfg, out);
        err << "radius_estimate "
            << (std::isfinite(radius) ? format_double(radius) : "inf") << "\n";
        for (std::size_t i = 0; i < points.size(); ++i)
          err << "residual at w=" << format_complex(points[i] - z0) << ": "
              << (residuals[i] ? format_complex(*residuals[i]) : "pole") << "\n";
      }
      return 0;
    }
    err << "error: no subcommand\n";
    return 1;
  } catch (const solver_failure& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hahnev::cli
