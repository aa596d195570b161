#include "crystalk/repring.hpp"

#include <stdexcept>
#include <string>

namespace crystalk {

namespace {

void require_prime(long p) {
  if (!is_prime(p)) throw std::invalid_argument("NotPrime: p = " + std::to_string(p) + " is not prime");
}

void require_k(long k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
}

Integer exact_div(const Integer& a, const Integer& b, const char* what) {
  if (!divides(b, a)) throw InternalError(std::string("non-integral closed form: ") + what);
  return a / b;
}

}  // namespace

RepClass::RepClass(long p, Rational q, Rational reg) : p_(p), q_(std::move(q)), reg_(std::move(reg)) {
  q_.canonicalize();
  reg_.canonicalize();
}

RepClass& RepClass::operator+=(const RepClass& o) {
  if (p_ != o.p_) throw std::invalid_argument("RepClass: mismatched p");
  q_ += o.q_;
  reg_ += o.reg_;
  return *this;
}

RepClass& RepClass::operator*=(const RepClass& o) {
  if (p_ != o.p_) throw std::invalid_argument("RepClass: mismatched p");
  Rational q = q_ * o.q_;
  Rational reg = q_ * o.reg_ + reg_ * o.q_ + Rational(p_) * reg_ * o.reg_;
  q_ = q;
  reg_ = reg;
  return *this;
}

RepClass lambda_class(long p, long l) {
  require_prime(p);
  if (l < 0) throw std::invalid_argument("lambda_class: negative degree");
  if (l >= p) return RepClass(p);
  const Integer sign = (l % 2 == 0) ? 1 : -1;
  Rational reg(binomial(p - 1, l) - sign, Integer(p));
  return RepClass(p, Rational(sign), reg);
}

RepClass lambda_class_total(long p, long k, long m) {
  require_prime(p);
  require_k(k);
  if (m < 0) throw std::invalid_argument("lambda_class_total: negative degree");
  std::vector<RepClass> lambdas;
  for (long l = 0; l < p; ++l) lambdas.push_back(lambda_class(p, l));
  std::vector<RepClass> total(static_cast<std::size_t>(m + 1), RepClass(p));
  total[0] = RepClass::trivial(p);
  for (long factor = 0; factor < k; ++factor) {
    std::vector<RepClass> next(total.size(), RepClass(p));
    for (long t = 0; t <= m; ++t)
      for (long l = 0; l < p && l <= t; ++l) next[t] += total[t - l] * lambdas[l];
    total = std::move(next);
  }
  return total[m];
}

Integer r_m(long p, long k, long m) {
  Rational phi = lambda_class_total(p, k, m).fixed_rank();
  if (phi.get_den() != 1 || phi < 0)
    throw InternalError("r_m(" + std::to_string(p) + "," + std::to_string(k) + "," + std::to_string(m) +
                        ") is not a nonnegative integer: " + phi.get_str());
  return phi.get_num();
}

std::vector<Integer> r_vector(long p, long k) {
  std::vector<Integer> r;
  for (long m = 0; m <= k * (p - 1); ++m) r.push_back(r_m(p, k, m));
  return r;
}

Integer a_j(long p, long k, long j) {
  require_prime(p);
  require_k(k);
  if (j < 0) throw std::invalid_argument("a_j: negative index");
  std::vector<Integer> ways(static_cast<std::size_t>(j + 1), Integer(0));
  ways[0] = 1;
  for (long part = 0; part < k; ++part) {
    std::vector<Integer> next(ways.size(), Integer(0));
    for (long t = 0; t <= j; ++t)
      for (long l = 0; l < p && l <= t; ++l) next[t] += ways[t - l];
    ways = std::move(next);
  }
  return ways[j];
}

Integer a_j_inclusion_exclusion(long p, long k, long j) {
  require_prime(p);
  require_k(k);
  if (j < 0) throw std::invalid_argument("a_j: negative index");
  Integer total = 0;
  for (long i = 0; i <= k && i * p <= j; ++i) {
    Integer term = binomial(k, i) * binomial(j - i * p + k - 1, k - 1);
    total += (i % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

Integer s_m(long p, long k, long m) {
  if (m < 0) throw std::invalid_argument("s_m: negative index");
  Integer s = 0;
  for (long j = 0; j < m && j <= k * (p - 1); ++j) s += a_j(p, k, j);
  return s;
}

RSumIdentities r_sum_identities(long p, long k) {
  require_prime(p);
  require_k(k);
  RSumIdentities c;
  if (p == 2) {
    c.sum_all = power_of(2, static_cast<unsigned long>(k - 1));
    c.sum_even = c.sum_all;
    c.sum_odd = 0;
    c.alternating = c.sum_all;
  } else {
    const Integer big = power_of(2, static_cast<unsigned long>((p - 1) * k));
    const Integer pk1 = power_of(p, static_cast<unsigned long>(k - 1));
    c.sum_all = exact_div(big - 1, p, "sum of r_m") + 1;
    const Integer head = exact_div(big + p - 1, 2 * p, "even/odd head term");
    const Integer tail = exact_div((p - 1) * pk1, 2, "even/odd tail term");
    c.sum_even = head + tail;
    c.sum_odd = head - tail;
    c.alternating = (p - 1) * pk1;
  }
  Integer all = 0, even = 0, odd = 0;
  const auto r = r_vector(p, k);
  for (std::size_t m = 0; m < r.size(); ++m) {
    all += r[m];
    (m % 2 == 0 ? even : odd) += r[m];
  }
  if (all != c.sum_all || even != c.sum_even || odd != c.sum_odd || even - odd != c.alternating)
    throw InternalError("r_m sum identities disagree with direct summation for p = " + std::to_string(p) +
                        ", k = " + std::to_string(k));
  return c;
}

}  // namespace crystalk
