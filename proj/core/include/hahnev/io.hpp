#pragma once

#include <iosfwd>
#include <string>

#include "hahnev/nevanlinna.hpp"
#include "hahnev/verify.hpp"

namespace hahnev {

// Fixed, versioned column set:
//   r, m, N, T, then per target N:<a>, Nhat:<a>, then Nqc, slack.
// Header row always present; RFC-4180 quoting.  Output is byte-identical
// across runs for identical configuration.
void write_table_csv(const NevTable& t, std::ostream& os);

// JSON forms; each report object echoes its full configuration.
std::string table_json(const NevTable& t, int indent = 2);
std::string report_json(const CheckReport& r, int indent = 2);

std::string csv_field(const std::string& raw);  // RFC-4180 escaping
std::string format_double(double v);            // fixed "%.15g" rendering

}  // namespace hahnev
