#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {
struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = hahnev::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}
}  // namespace

TEST_CASE("diff prints the canonical expression") {
  Result r = run_cli({"diff", "--fn", "z^2", "--q", "0.5", "--c", "1", "--k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "(1.5*z + 1)\n");
}

TEST_CASE("fermat check passes for z and exits zero") {
  Result r = run_cli({"verify", "fermat", "--fn", "z", "--q", "0.5", "--c", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"verdict\": \"pass\"") != std::string::npos);
  CHECK(r.out.find("z^3") != std::string::npos);
}

TEST_CASE("constant input to fermat is a config error") {
  Result r = run_cli({"verify", "fermat", "--fn", "0.5", "--q", "0.5", "--c", "1"});
  CHECK(r.code == 1);
  CHECK(!r.err.empty());
}

TEST_CASE("a check that fails exits 3") {
  // Four zeros hugging the top circle keep m(r, Dg/g) visible at r_max = 4.
  Result r = run_cli({"verify", "lodl", "--fn", "(z-3.9)*(z+3.9)*(z-3.9i)*(z+3.9i)",
                      "--q", "0.5", "--c", "0", "--rmin", "1", "--rmax", "4",
                      "--grid", "21"});
  CHECK(r.code == 3);
  CHECK(r.out.find("\"verdict\": \"fail\"") != std::string::npos);
}

TEST_CASE("table output is byte-identical across runs and has fixed columns") {
  std::vector<std::string> args{"table", "--fn", "z + 1/z", "--targets",
                                "2,-2,inf", "--q", "0.5", "--c", "0.3",
                                "--rmin", "1", "--rmax", "64", "--grid", "7"};
  Result a = run_cli(args);
  Result b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  std::string header = a.out.substr(0, a.out.find('\n'));
  CHECK(header == "r,m,N,T,N:2,Nhat:2,N:-2,Nhat:-2,N:inf,Nhat:inf,Nqc,slack");
  int lines = 0;
  for (char c : a.out)
    if (c == '\n') ++lines;
  CHECK(lines == 8);  // header + 7 rows
}

TEST_CASE("reports echo the configuration") {
  Result r = run_cli({"verify", "smt", "--fn", "z + 1/z", "--targets", "2,-2,inf",
                      "--q", "0.5", "--c", "0.3", "--grid", "21"});
  CHECK(r.code == 0);
  for (const char* key : {"\"q\"", "\"c\"", "\"cluster_tol\"", "\"slack_fraction\"",
                          "\"quad_base_nodes\"", "\"r_max\"", "\"targets\""})
    CHECK(r.out.find(key) != std::string::npos);
}

TEST_CASE("solve-heq emits coefficients and residual diagnostics") {
  Result r = run_cli({"solve-heq", "--coeffs", "-1", "--init", "1", "--order",
                      "10", "--q", "0.5", "--c", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.substr(0, 18) == "n,re,im,abs_ratio\n");
  CHECK(r.out.find("0.666666666666667") != std::string::npos);
  CHECK(r.err.find("radius_estimate") != std::string::npos);
  CHECK(r.err.find("residual at w=") != std::string::npos);

  Result j = run_cli({"solve-heq", "--coeffs", "-1", "--init", "1", "--order",
                      "10", "--q", "0.5", "--c", "1", "--format", "json"});
  CHECK(j.code == 0);
  CHECK(j.out.find("\"radius_estimate\"") != std::string::npos);
  CHECK(j.out.find("\"residuals\"") != std::string::npos);
}

TEST_CASE("config errors exit 1") {
  CHECK(run_cli({"diff", "--fn", "z^2"}).code == 1);            // missing --q
  CHECK(run_cli({"diff", "--fn", "z^^2", "--q", "0.5"}).code == 1);
  CHECK(run_cli({"diff", "--fn", "z", "--q", "1"}).code == 1);  // q = 1 invalid
  CHECK(run_cli({"table", "--fn", "z", "--q", "0.5", "--rmin", "10", "--rmax",
                 "1"}).code == 1);
  CHECK(run_cli({"verify", "smt", "--fn", "z", "--targets", "1,2,inf", "--q",
                 "1.5"}).code == 1);  // |q| >= 1 rejected for theorem checks
  Result perr = run_cli({"diff", "--fn", "1/(z-z)", "--q", "0.5"});
  CHECK(perr.code == 1);
  CHECK(perr.err.find("offset") != std::string::npos);
}

TEST_CASE("--out writes the payload to a file") {
  std::string path = "/tmp/hahnev_cli_test_table.csv";
  std::remove(path.c_str());
  Result r = run_cli({"table", "--fn", "z", "--targets", "inf", "--q", "0.5",
                      "--c", "0", "--rmin", "1", "--rmax", "10", "--grid", "2",
                      "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  std::string header;
  std::getline(f, header);
  CHECK(header == "r,m,N,T,N:inf,Nhat:inf,Nqc,slack");
  std::remove(path.c_str());
}

TEST_CASE("help is printed on request") {
  Result r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("diff") != std::string::npos);
  CHECK(r.out.find("verify") != std::string::npos);
}
