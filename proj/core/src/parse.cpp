#include "hahnev/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace hahnev {

namespace {

std::string fmt_double(double v, int prec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  if (std::strcmp(buf, "-0") == 0) return "0";
  return buf;
}

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  double tol = kClusterTol;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw parse_error(msg, at);
  }

  RatFun parse_sum() {
    RatFun acc = parse_term();
    for (;;) {
      if (consume('+'))
        acc = acc + parse_term();
      else if (consume('-'))
        acc = acc - parse_term();
      else
        return acc;
    }
  }

  RatFun parse_term() {
    RatFun acc = parse_factor();
    for (;;) {
      if (consume('*')) {
        acc = acc * parse_factor();
      } else if (consume('/')) {
        std::size_t at = pos - 1;
        RatFun d = parse_factor();
        if (d.is_zero()) fail("denominator folds to zero", at);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  RatFun parse_factor() {
    if (consume('-')) return -parse_factor();
    return parse_power();
  }

  RatFun parse_power() {
    RatFun base = parse_atom();
    if (!consume('^')) return base;
    std::size_t op_at = pos - 1;
    skip_ws();
    bool neg = consume('-');
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) fail("integer exponent expected after '^'", start);
    if (pos < text.size() && (text[pos] == '.' || text[pos] == 'e' || text[pos] == 'E'))
      fail("integer exponent expected after '^'", start);
    int n = 0;
    auto res = std::from_chars(text.data() + start, text.data() + pos, n);
    if (res.ec != std::errc{}) fail("exponent out of range", start);
    if (neg) n = -n;
    if (base.is_zero() && n <= 0)
      fail("zero base raised to a nonpositive power", op_at);
    return pow(base, n, tol);
  }

  RatFun parse_atom() {
    skip_ws();
    if (pos >= text.size()) fail("expected a number, 'z', 'i' or '('", pos);
    char c = text[pos];
    if (c == '(') {
      ++pos;
      RatFun inner = parse_sum();
      skip_ws();
      if (!consume(')')) fail("expected ')'", pos);
      return inner;
    }
    if (c == 'z') {
      ++pos;
      return RatFun::z();
    }
    if (c == 'i') {
      ++pos;
      return RatFun::constant(cplx(0.0, 1.0));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    fail(std::string("unexpected character '") + c + "'", pos);
  }

  RatFun parse_number() {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
    }
    if (pos + 1 < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      std::size_t look = pos + 1;
      if (look < text.size() && (text[look] == '+' || text[look] == '-')) ++look;
      if (look < text.size() && std::isdigit(static_cast<unsigned char>(text[look]))) {
        pos = look;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
          ++pos;
      }
    }
    double v = 0.0;
    auto res = std::from_chars(text.data() + start, text.data() + pos, v);
    if (res.ec != std::errc{} || res.ptr != text.data() + pos)
      fail("malformed number", start);
    // A directly adjacent 'i' makes the literal imaginary: "3i".
    if (pos < text.size() && text[pos] == 'i') {
      ++pos;
      return RatFun::constant(cplx(0.0, v));
    }
    return RatFun::constant(cplx(v, 0.0));
  }
};

// Coefficient rendering inside a product with a monomial.
std::string coeff_factor(cplx c, int prec) {
  double re = c.real(), im = c.imag();
  if (im == 0.0) return fmt_double(re, prec);
  if (re == 0.0) {
    if (im == 1.0) return "i";
    if (im == -1.0) return "-i";
    return fmt_double(im, prec) + "i";
  }
  std::string out = "(" + fmt_double(re, prec);
  out += im < 0.0 ? "-" : "+";
  double ai = std::abs(im);
  if (ai != 1.0) out += fmt_double(ai, prec);
  out += "i)";
  return out;
}

std::string format_poly(const Poly& p, int prec) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    cplx c = p.coeff(k);
    if (c == cplx(0.0)) continue;
    std::string mono =
        k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
    std::string token;
    if (k == 0) {
      token = coeff_factor(c, prec);
      if (token.front() == '(') token = token.substr(1, token.size() - 2);
    } else if (c == cplx(1.0)) {
      token = mono;
    } else if (c == cplx(-1.0)) {
      token = "-" + mono;
    } else {
      token = coeff_factor(c, prec) + "*" + mono;
    }
    if (out.empty()) {
      out = token;
    } else if (token.front() == '-') {
      out += " - " + token.substr(1);
    } else {
      out += " + " + token;
    }
  }
  return out;
}

}  // namespace

RatFun parse_expr(std::string_view text, double tol) {
  Parser p{text, 0, tol};
  p.skip_ws();
  if (p.pos >= text.size()) throw parse_error("empty expression", 0);
  RatFun out = p.parse_sum();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("unexpected trailing input", p.pos);
  return out;
}

std::string format_expr(const RatFun& g, int precision) {
  std::string num = "(" + format_poly(g.num(), precision) + ")";
  if (g.den().degree() == 0 && g.den().coeff(0) == cplx(1.0)) return num;
  return num + "/(" + format_poly(g.den(), precision) + ")";
}

cplx parse_complex(std::string_view text) {
  RatFun v = parse_expr(text);
  if (!v.is_constant()) throw parse_error("expected a constant", 0);
  return v.constant_value();
}

ExtValue parse_target(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string_view core = text.substr(b, e - b);
  if (core.size() == 3 && (core[0] == 'i' || core[0] == 'I') &&
      (core[1] == 'n' || core[1] == 'N') && (core[2] == 'f' || core[2] == 'F'))
    return ExtValue::inf();
  return ExtValue(parse_complex(core));
}

std::string format_complex(cplx v, int precision) {
  double re = v.real(), im = v.imag();
  if (im == 0.0) return fmt_double(re, precision);
  if (re == 0.0) {
    if (im == 1.0) return "i";
    if (im == -1.0) return "-i";
    return fmt_double(im, precision) + "i";
  }
  std::string out = fmt_double(re, precision);
  out += im < 0.0 ? "-" : "+";
  double ai = std::abs(im);
  if (ai != 1.0) out += fmt_double(ai, precision);
  out += "i";
  return out;
}

std::string target_label(const ExtValue& a) {
  return a.is_inf() ? "inf" : format_complex(a.finite(), 12);
}

}  // namespace hahnev
