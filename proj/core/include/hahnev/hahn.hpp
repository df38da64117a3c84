#pragma once

#include "hahnev/qcore.hpp"
#include "hahnev/ratfun.hpp"

namespace hahnev {

// (g(qz + c) - g(z)) / ((q - 1)z + c), normalized.  When g is finite at z0
// the numerator vanishes there and normalization cancels the factor, so the
// result carries no spurious pole at z0.  Requires q ∉ {0, 1}.
RatFun hahn_diff(const RatFun& g, const HahnParams& p, double tol = kClusterTol);

// k-fold application of hahn_diff, k >= 1.
RatFun hahn_iter(const RatFun& g, int k, const HahnParams& p,
                 double tol = kClusterTol);

// Closed-form expansion of the k-th iterate,
//
//   D^k g(z) = Σ_{i=0..k} (-1)^i [k i]_q q^{i(i-1)/2} g(σ^{k-i}(z))
//              / ( q^{k(k-1)/2} ((q-1)z + c)^k ).
//
// The q^{k(k-1)/2} denominator factor is what direct recursion of the first
// difference produces (hand expansion at k = 2: the recursion yields
// g(σ²) - (1+q)g(σ) + q·g over q·((q-1)z+c)²); hahn_iter is the regression
// oracle pinning it.  Requires q ∉ {0,1} and q not a root of unity of order
// <= k.
RatFun hahn_expand(const RatFun& g, int k, const HahnParams& p,
                   double tol = kClusterTol);

// -D g / (g(qz+c) g(z)); identical to hahn_diff(1/g) after normalization.
// g must not be ≡ 0.
RatFun hahn_reciprocal(const RatFun& g, const HahnParams& p,
                       double tol = kClusterTol);

}  // namespace hahnev
