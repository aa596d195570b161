#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace crystalk {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

// Raised when an internal consistency assertion fails. Never a user error.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline Integer abs_value(const Integer& a) {
  Integer r;
  mpz_abs(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
inline int cmpabs(const Integer& a, unsigned long b) { return mpz_cmpabs_ui(a.get_mpz_t(), b); }

inline Integer gcd_of(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer lcm_of(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer power_of(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Quotient rounded to the nearest integer; b != 0.
inline Integer nearest_quotient(const Integer& a, const Integer& b) {
  Integer q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Integer twice = 2 * r;
  // floor division leaves r with the sign of b; stepping q up moves r toward zero.
  if (abs_value(twice) > abs_value(b)) q += 1;
  return q;
}

inline bool divides(const Integer& d, const Integer& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline bool fits_int64(const Integer& a) { return a.fits_slong_p(); }

inline std::int64_t to_int64(const Integer& a) {
  if (!a.fits_slong_p()) throw InternalError("integer does not fit in 64 bits: " + a.get_str());
  return a.get_si();
}

// Prime factorization with multiplicities, ascending primes. n >= 1.
std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n);

}  // namespace crystalk
