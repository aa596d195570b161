#include "crystalk/repring.hpp"
#include "crystalk/linalg.hpp"
#include "crystalk/zpmod.hpp"

#include <doctest.h>

using namespace crystalk;

namespace {

using Poly = std::vector<Integer>;

Poly multiply(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// r_m by averaging det(1 + x g) over the group. Each nontrivial g acts on
// Q(zeta)^k with every primitive p-th root of unity k times, so
//   sum_m r_m x^m = ((1 + x)^n + (p - 1) prod_j (1 + x zeta^j)^k) / p.
std::vector<Integer> r_oracle(long p, long k) {
  const long n = k * (p - 1);
  Poly one_plus_x{1, 1};
  Poly lhs{1};
  for (long i = 0; i < n; ++i) lhs = multiply(lhs, one_plus_x);
  // prod_{j=1}^{p-1} (1 + x zeta^j) = sum_{i=0}^{p-1} (-x)^i.
  Poly phi(p, 0);
  for (long i = 0; i < p; ++i) phi[i] = (i % 2 == 0) ? 1 : -1;
  Poly rhs{1};
  for (long i = 0; i < k; ++i) rhs = multiply(rhs, phi);
  std::vector<Integer> r(n + 1);
  for (long m = 0; m <= n; ++m) {
    const Integer total = lhs[m] + (p - 1) * rhs[m];
    REQUIRE(divides(Integer(p), total));
    r[m] = total / p;
  }
  return r;
}

// a_j by enumerating every tuple in [0, p-1]^k.
Integer a_enumerated(long p, long k, long j) {
  std::vector<long> digits(k, 0);
  Integer count = 0;
  while (true) {
    long s = 0;
    for (long d : digits) s += d;
    if (s == j) ++count;
    long pos = 0;
    while (pos < k && ++digits[pos] == p) digits[pos++] = 0;
    if (pos == k) break;
  }
  return count;
}

}  // namespace

TEST_SUITE("repring") {
  TEST_CASE("lambda classes") {
    CHECK(lambda_class(5, 0) == RepClass::trivial(5));
    CHECK(lambda_class(5, 1) == RepClass(5, -1, 1));
    CHECK(lambda_class(3, 2) == RepClass::trivial(3));
    CHECK(lambda_class(3, 3) == RepClass(3));
    CHECK(lambda_class(7, 9) == RepClass(7));
  }

  TEST_CASE("ring rules") {
    const RepClass reg = RepClass::regular(5);
    CHECK(reg * reg == RepClass(5, 0, 5));
    CHECK(RepClass::trivial(5) * reg == reg);
    const RepClass q_zeta = lambda_class(3, 1);
    // [Q(zeta)]^2 = 2[Q] + [Q(zeta)] for p = 3.
    CHECK(q_zeta * q_zeta == Rational(2) * RepClass::trivial(3) + q_zeta);
  }

  TEST_CASE("total lambda classes") {
    CHECK(lambda_class_total(5, 2, 0) == RepClass::trivial(5));
    CHECK(lambda_class_total(3, 2, 2) == RepClass(3, 3, 1));
    CHECK(lambda_class_total(3, 1, 3) == RepClass(3));
    for (long p : {2L, 3L, 5L})
      for (long k : {1L, 2L})
        for (long m = 0; m <= k * (p - 1); ++m) CHECK(lambda_class_total(p, k, m).dimension() == binomial(k * (p - 1), m));
  }

  TEST_CASE("r vectors") {
    CHECK(r_vector(3, 1) == std::vector<Integer>{1, 0, 1});
    CHECK(r_vector(7, 1) == std::vector<Integer>{1, 0, 3, 2, 3, 0, 1});
    CHECK(r_vector(3, 2) == std::vector<Integer>{1, 0, 4, 0, 1});
    CHECK(r_vector(2, 2) == std::vector<Integer>{1, 0, 1});
  }

  TEST_CASE("a and s") {
    CHECK(a_j(3, 2, 0) == 1);
    CHECK(a_j(3, 2, 1) == 2);
    CHECK(a_j(3, 2, 2) == 3);
    CHECK(a_j(3, 2, 3) == 2);
    CHECK(a_j(3, 2, 4) == 1);
    CHECK(a_j(3, 2, 5) == 0);
    for (long p : {3L, 5L, 7L})
      for (long m = 0; m <= 2 * p; ++m) {
        CHECK(a_j(p, 1, m) == (m <= p - 1 ? 1 : 0));
        CHECK(s_m(p, 1, m) == std::min(m, p));
      }
    CHECK(s_m(3, 2, 3) == 6);
    CHECK(s_m(3, 2, 5) == 9);
  }

  TEST_CASE("sum identities") {
    const RSumIdentities a = r_sum_identities(3, 1);
    CHECK(a.sum_all == 2);
    CHECK(a.alternating == 2);
    const RSumIdentities b = r_sum_identities(3, 2);
    CHECK(b.sum_all == 6);
    CHECK(b.sum_even == 6);
    CHECK(b.sum_odd == 0);
    CHECK(b.alternating == 6);
    const RSumIdentities c = r_sum_identities(2, 3);
    CHECK(c.sum_even == 4);
    CHECK(c.sum_odd == 0);
    CHECK(c.sum_all == 4);
  }

  TEST_CASE("property: representation ring against the character oracle") {
    for (long p : {2L, 3L, 5L, 7L, 11L})
      for (long k : {1L, 2L, 3L}) {
        CAPTURE(p);
        CAPTURE(k);
        CHECK(r_vector(p, k) == r_oracle(p, k));
      }
  }

  TEST_CASE("property: a_j against enumeration") {
    for (long p : {2L, 3L, 5L})
      for (long k : {1L, 2L, 3L}) {
        Integer total = 0;
        for (long j = 0; j <= k * (p - 1) + 1; ++j) {
          const Integer e = a_enumerated(p, k, j);
          CHECK(a_j(p, k, j) == e);
          CHECK(a_j_inclusion_exclusion(p, k, j) == e);
          total += e;
          CHECK(s_m(p, k, j + 1) == total);
        }
        CHECK(total == power_of(p, k));
      }
  }

  TEST_CASE("property: fixed rank of exterior powers matches r_m") {
    for (long p : {3L, 5L}) {
      const ZpModule c = direct_sum(make_cyclotomic(p), make_cyclotomic(p));
      const std::vector<Integer> r = r_vector(p, 2);
      for (std::size_t m = 0; m <= c.rank(); ++m) {
        const ZpModule e = exterior_power(c, m);
        const std::size_t fixed = e.rank() - rational_rank(e.action() - IntMatrix::identity(e.rank()));
        CHECK(Integer(static_cast<unsigned long>(fixed)) == r[m]);
      }
    }
  }
}
