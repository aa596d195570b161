#include "crystalk/integer.hpp"

#include <algorithm>
#include <map>

namespace crystalk {
namespace {

Integer pollard_rho(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto step = [&](const Integer& v) {
      Integer r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = gcd_of(abs_value(x - y), n);
    }
    if (d != n) return d;
  }
}

void split(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) {
    ++out[n];
    return;
  }
  Integer d = pollard_rho(n);
  split(d, out);
  split(n / d, out);
}

}  // namespace

std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n_in) {
  if (n_in < 1) throw std::invalid_argument("factorize: argument must be positive");
  std::map<Integer, unsigned> found;
  Integer n = n_in;
  for (unsigned long d = 2; d < 10000 && n > 1; ++d) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      ++found[Integer(d)];
      n /= d;
    }
    if (Integer(d) * d > n) break;
  }
  split(n, found);
  return {found.begin(), found.end()};
}

}  // namespace crystalk
