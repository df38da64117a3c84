#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hahnev {

using cplx = std::complex<double>;

// Default tolerances.
//
// kClusterTol decides when two numerically computed points count as the same
// root; it is the sensitivity knob of the whole pipeline.  Root matching
// happens exactly once, inside RatFun normalization -- downstream code never
// re-matches.
inline constexpr double kClusterTol = 1e-7;

// Absolute budget for the circle quadrature behind proximity functions.
inline constexpr double kQuadTol = 1e-9;

// Points with |z| below this count as sitting at the origin (the n(0) term
// of integrated counting functions).
inline constexpr double kOriginTol = 1e-12;

// Stand-in fraction of T(r,g) for the o(T) error terms of the theorem checks.
inline constexpr double kSlackFraction = 0.05;

// A target value in C ∪ {∞}.  Counting operations accept ∞ as a first-class
// target and route it through denominators.
class ExtValue {
public:
  ExtValue(cplx a) : value_(a) {}
  ExtValue(double a) : value_(a) {}

  static ExtValue inf() {
    ExtValue v(cplx{});
    v.inf_ = true;
    return v;
  }

  bool is_inf() const { return inf_; }
  cplx finite() const { return value_; }

  bool same_as(const ExtValue& o, double tol = 1e-12) const {
    if (inf_ || o.inf_) return inf_ == o.inf_;
    return std::abs(value_ - o.value_) <= tol * (1.0 + std::abs(value_));
  }

private:
  cplx value_;
  bool inf_ = false;
};

struct invalid_parameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct degenerate_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown by the root solver when the iteration cap is hit or the residual
// acceptance test fails; carries the best iterate found.
struct solver_failure : std::runtime_error {
  solver_failure(const std::string& msg, std::vector<cplx> iterate)
      : std::runtime_error(msg), best_iterate(std::move(iterate)) {}
  std::vector<cplx> best_iterate;
};

struct parse_error : std::runtime_error {
  parse_error(const std::string& msg, std::size_t at)
      : std::runtime_error(msg + " (at offset " + std::to_string(at) + ")"),
        offset(at),
        message(msg) {}
  std::size_t offset;
  std::string message;
};

}  // namespace hahnev
