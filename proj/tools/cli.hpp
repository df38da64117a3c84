#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hahnev/nevanlinna.hpp"
#include "hahnev/types.hpp"

namespace hahnev::cli {

// One process-wide configuration record, echoed verbatim into every report
// so the tolerance surrogates stay auditable.
struct RunConfig {
  cplx q{0.5, 0.0};
  cplx c{0.0, 0.0};
  RadiusGrid grid{};
  QuadOptions quad{};
  double cluster_tol = kClusterTol;
  double slack_fraction = kSlackFraction;
  std::string format = "csv";  // csv | json
  std::string out_path;        // empty = stdout
  int precision = 15;
};

// Exit codes: 0 ok/pass, 1 parse or configuration error, 2 numeric failure
// (root solver), 3 check failed.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace hahnev::cli
