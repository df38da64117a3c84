#pragma once

#include <string>
#include <string_view>

#include "hahnev/ratfun.hpp"
#include "hahnev/types.hpp"

namespace hahnev {

// Rational-function expressions over the variable z:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' ['-'] integer)?
//   atom   := number | 'i' | 'z' | '(' expr ')'
//   number := decimal literal, optionally suffixed with 'i' ("3i" is one
//             imaginary literal)
//
// '^' binds tighter than unary minus ("-z^2" is -(z^2)), exponents are
// integer literals, whitespace is insignificant.  Constants fold during
// lowering; a denominator that folds to the zero function is a semantic
// error.  All errors are parse_error with a byte offset.
RatFun parse_expr(std::string_view text, double tol = kClusterTol);

// Canonical rendering "(num)/(den)" with coefficients printed at the given
// precision; parse_expr(format_expr(g)) reproduces g to about
// 10^(2-precision).
std::string format_expr(const RatFun& g, int precision = 15);

// "a+bi" forms: "0.5", "-1.2i", "2-i", "i", ...  Accepts any constant
// expression of the grammar above.
cplx parse_complex(std::string_view text);

// "inf" (any case) or a complex constant.
ExtValue parse_target(std::string_view text);

std::string format_complex(cplx v, int precision = 15);

// Compact label for CSV/JSON columns: "inf", "2", "-1+0.5i", ...
std::string target_label(const ExtValue& a);

}  // namespace hahnev
