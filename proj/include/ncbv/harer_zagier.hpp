#pragma once

#include <stdexcept>

#include "ncbv/nu_polynomial.hpp"
#include "ncbv/scalar.hpp"

namespace ncbv {

inline BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// (2k-1)!!, with (-1)!! = 1.
inline BigInt double_factorial_odd(unsigned long k) {
  BigInt r = 1;
  for (unsigned long j = 1; j < 2 * k; j += 2) r *= j;
  return r;
}

inline BigInt catalan(unsigned long k) { return binomial(2 * k, k) / (k + 1); }

/// I^N_{2k} = (2k)!/(2^k k!) Σ_{m=0}^{k} 2^m C(k,m) C(N,m+1).
inline Scalar harer_zagier_closed(unsigned long k, unsigned long n) {
  if (n == 0) throw std::invalid_argument("N must be positive");
  BigInt sum = 0;
  for (unsigned long m = 0; m <= k; ++m) {
    BigInt pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, m);
    sum += pow2 * binomial(k, m) * binomial(n, m + 1);
  }
  BigInt pow2k;
  mpz_ui_pow_ui(pow2k.get_mpz_t(), 2, k);
  return Scalar(factorial(2 * k) / (pow2k * factorial(k)) * sum);
}

/// (k+1) p_{2k} - (4k-2) ν p_{2k-2} - (k-1)(2k-1)(2k-3) p_{2k-4}; zero when the
/// recurrence holds.
inline NuPolynomial harer_zagier_residual(unsigned long k, const NuPolynomial& p2k,
                                          const NuPolynomial& p2k_2, const NuPolynomial& p2k_4) {
  const long kk = static_cast<long>(k);
  return Scalar(kk + 1) * p2k - Scalar(4 * kk - 2) * p2k_2.shifted(1) -
         Scalar((kk - 1) * (2 * kk - 1) * (2 * kk - 3)) * p2k_4;
}

}  // namespace ncbv
