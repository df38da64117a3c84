#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "hahnev/ratfun.hpp"

namespace testsup {

using hahnev::cplx;
using hahnev::Poly;
using hahnev::RatFun;

// Deterministic generator; the raw 53-bit draw keeps values identical across
// standard library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(unit() * (hi - lo + 1)) % (hi - lo + 1);
  }
  cplx box(double half) { return {uniform(-half, half), uniform(-half, half)}; }

private:
  std::mt19937_64 gen_;
};

inline Poly random_poly(Rng& rng, int deg, double half = 2.0) {
  std::vector<cplx> c(static_cast<std::size_t>(deg) + 1);
  for (cplx& x : c) x = rng.box(half);
  while (std::abs(c[deg]) < 0.3) c[deg] = rng.box(half);
  return Poly(std::move(c));
}

inline RatFun random_ratfun(Rng& rng, int max_deg) {
  for (;;) {
    int dn = rng.integer(0, max_deg);
    int dd = rng.integer(0, max_deg);
    RatFun g(random_poly(rng, dn), random_poly(rng, dd));
    if (!g.is_constant()) return g;
  }
}

// For characteristic-function comparisons: T(r, 1/(g-a)) - T(r, g) tracks
// -log|g(0) - a| exactly (Jensen), so adversarial proximity of a to g(0), or
// a huge |g(0)| from a pole near the origin, blows the O(1) constant up.
// The generator stays in the generic-position regime the bounds are
// calibrated for.
inline RatFun random_tame_ratfun(Rng& rng, int max_deg) {
  for (;;) {
    RatFun g = random_ratfun(rng, max_deg);
    auto v = eval(g, cplx(0.0));
    if (v && std::abs(*v) <= 4.0) return g;
  }
}

inline cplx random_target_for(Rng& rng, const RatFun& g) {
  auto v = eval(g, cplx(0.0));
  // Far from the origin value every draw already satisfies the separation;
  // the proximity band only matters when g(0) sits inside the sample box.
  if (!v || std::abs(*v) > 7.0) return rng.box(2.0);
  for (;;) {
    cplx a = rng.box(2.0);
    double gap = std::abs(*v - a);
    if (gap >= 0.3 && gap <= 6.0) return a;
  }
}

// The fixed 20-function suite the theorem checks run on.
inline std::vector<RatFun> regression_suite() {
  std::vector<RatFun> suite;
  suite.push_back(RatFun::z() + pow(RatFun::z(), -1));  // z + 1/z
  suite.push_back(pow(RatFun::z(), 2));
  Rng rng(0x51137eed);
  while (suite.size() < 20) suite.push_back(random_tame_ratfun(rng, 5));
  return suite;
}

}  // namespace testsup
