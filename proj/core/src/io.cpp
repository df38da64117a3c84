#include "hahnev/io.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "hahnev/parse.hpp"

namespace hahnev {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  if (buf[0] == '-' && buf[1] == '0' && buf[2] == '\0') return "0";
  return buf;
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n\r") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_table_csv(const NevTable& t, std::ostream& os) {
  os << "r,m,N,T";
  for (const ExtValue& a : t.targets) {
    std::string lab = target_label(a);
    os << ',' << csv_field("N:" + lab) << ',' << csv_field("Nhat:" + lab);
  }
  os << ",Nqc,slack\n";
  for (const NevRow& row : t.rows) {
    os << format_double(row.r) << ',' << format_double(row.m) << ','
       << format_double(row.N) << ',' << format_double(row.T);
    for (std::size_t i = 0; i < t.targets.size(); ++i)
      os << ',' << format_double(row.target_N[i]) << ','
         << format_double(row.target_Nhat[i]);
    os << ',' << format_double(row.Nqc) << ',' << format_double(row.slack)
       << '\n';
  }
}

namespace {

json config_json(const NevTable& t) {
  json cfg;
  cfg["q"] = format_complex(t.params.q);
  cfg["c"] = format_complex(t.params.c);
  cfg["z0"] = format_complex(t.params.z0());
  cfg["r_min"] = t.grid.r_min;
  cfg["r_max"] = t.grid.r_max;
  cfg["grid_points"] = t.grid.points;
  cfg["quad_base_nodes"] = t.quad.base_nodes;
  cfg["quad_abs_tol"] = t.quad.abs_tol;
  cfg["cluster_tol"] = t.cluster_tol;
  cfg["slack_fraction"] = t.slack_fraction;
  json targets = json::array();
  for (const ExtValue& a : t.targets) targets.push_back(target_label(a));
  cfg["targets"] = targets;
  return cfg;
}

}  // namespace

std::string table_json(const NevTable& t, int indent) {
  json out;
  out["kind"] = "nevanlinna-table";
  out["config"] = config_json(t);
  json rows = json::array();
  for (const NevRow& row : t.rows) {
    json r;
    r["r"] = row.r;
    if (row.nudged) r["r_used"] = row.r_used;
    r["m"] = row.m;
    r["N"] = row.N;
    r["T"] = row.T;
    for (std::size_t i = 0; i < t.targets.size(); ++i) {
      std::string lab = target_label(t.targets[i]);
      r["N:" + lab] = row.target_N[i];
      r["Nhat:" + lab] = row.target_Nhat[i];
    }
    r["Nqc"] = row.Nqc;
    r["slack"] = row.slack;
    rows.push_back(std::move(r));
  }
  out["rows"] = std::move(rows);
  return out.dump(indent) + "\n";
}

std::string report_json(const CheckReport& rep, int indent) {
  json out;
  out["kind"] = "check-report";
  out["name"] = rep.name;
  out["verdict"] = rep.pass ? "pass" : "fail";
  if (!rep.classification.empty()) out["classification"] = rep.classification;
  json cfg;
  for (const auto& [k, v] : rep.config) cfg[k] = v;
  out["config"] = std::move(cfg);
  if (!rep.notes.empty()) out["notes"] = rep.notes;
  json rows = json::array();
  for (const CheckRow& row : rep.rows) {
    json r;
    r["r"] = row.r;
    r["lhs"] = row.lhs;
    r["rhs"] = row.rhs;
    r["slack"] = row.slack;
    r["asserted"] = row.asserted;
    if (row.asserted) r["ok"] = row.ok;
    for (const auto& [k, v] : row.extra) r[k] = v;
    rows.push_back(std::move(r));
  }
  out["rows"] = std::move(rows);
  return out.dump(indent) + "\n";
}

}  // namespace hahnev
