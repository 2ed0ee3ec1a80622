#ifndef EYEWIT_MATHUTIL_HPP
#define EYEWIT_MATHUTIL_HPP

#include <cmath>

namespace eyewit {

inline double log_factorial(int n) { return std::lgamma(double(n) + 1.0); }

// log C(n,k); requires 0 <= k <= n
inline double log_binomial(int n, int k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

// C(n,k) eta^k (1-eta)^(n-k), evaluated in log space so that n ~ few hundred
// stays finite. Handles the eta = 0 / 1 edges exactly.
inline double binomial_pmf(int k, int n, double eta) {
  if (k < 0 || k > n) return 0.0;
  if (eta <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (eta >= 1.0) return k == n ? 1.0 : 0.0;
  return std::exp(log_binomial(n, k) + k * std::log(eta) +
                  (n - k) * std::log1p(-eta));
}

// sqrt(C(n,k) T^k (1-T)^(n-k)) -- beamsplitter amplitude, all-positive phase
// convention.
inline double split_amplitude(int k, int n, double T) {
  double p = binomial_pmf(k, n, T);
  return p > 0.0 ? std::sqrt(p) : 0.0;
}

}  // namespace eyewit

#endif
