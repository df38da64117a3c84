#include "hahnev/qcore.hpp"

#include <cmath>

namespace hahnev {

void HahnParams::require_operator_valid() const {
  if (!operator_valid())
    throw invalid_parameter("Hahn parameters need q not in {0, 1}");
}

void HahnParams::require_theorem_valid() const {
  if (!theorem_valid())
    throw invalid_parameter("theorem checks need 0 < |q| < 1");
}

cplx q_integer(int n, cplx q) {
  if (n < 0) throw invalid_parameter("q_integer: n must be nonnegative");
  if (q == cplx(1.0)) throw invalid_parameter("q_integer: q = 1");
  return (std::pow(q, n) - 1.0) / (q - 1.0);
}

cplx pochhammer(cplx a, cplx q, int n) {
  if (n < 0) throw invalid_parameter("pochhammer: n must be nonnegative");
  cplx prod = 1.0;
  cplx qk = 1.0;
  for (int k = 0; k < n; ++k) {
    prod *= 1.0 - a * qk;
    qk *= q;
  }
  return prod;
}

cplx pochhammer_inf(cplx a, cplx q, double tol) {
  double aq = std::abs(q);
  if (aq >= 1.0 || aq == 0.0)
    throw invalid_parameter("pochhammer_inf: needs 0 < |q| < 1");
  if (!(tol > 0.0) || tol >= 0.5)
    throw invalid_parameter("pochhammer_inf: tol must be in (0, 0.5)");
  double aa = std::abs(a);
  if (aa == 0.0) return 1.0;
  // Truncate at N with |a||q|^N / (1 - |q|) < tol: the remaining factors
  // satisfy |Σ_{n>=N} log(1 - a q^n)| <= 2 Σ |a q^n| <= 2 tol.
  double target = tol * (1.0 - aq) / aa;
  int n_terms = 1;
  if (target < 1.0)
    n_terms = static_cast<int>(std::ceil(std::log(target) / std::log(aq))) + 1;
  return pochhammer(a, q, n_terms);
}

cplx gauss_binomial(int n, int j, cplx q) {
  if (j < 0 || j > n)
    throw invalid_parameter("gauss_binomial: j out of [0, n]");
  if (j > n - j) j = n - j;  // symmetry, fewer factors
  cplx prod = 1.0;
  for (int k = 1; k <= j; ++k) {
    cplx denom = 1.0 - std::pow(q, k);
    if (std::abs(denom) < 1e-12)
      throw invalid_parameter("gauss_binomial: q is (numerically) a root of unity of order <= n");
    prod *= (1.0 - std::pow(q, n - k + 1)) / denom;
  }
  return prod;
}

cplx sigma_iter(cplx z, int k, const HahnParams& p) {
  if (k < 0) throw invalid_parameter("sigma_iter: k must be nonnegative");
  if (k == 0) return z;
  if (p.q == cplx(1.0)) throw invalid_parameter("sigma_iter: q = 1");
  cplx qk = std::pow(p.q, k);
  return qk * z + p.c * (qk - 1.0) / (p.q - 1.0);
}

}  // namespace hahnev
