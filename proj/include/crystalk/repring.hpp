#pragma once

#include "crystalk/integer.hpp"

#include <vector>

namespace crystalk {

// q * [Q] + reg * [Q[Z/p]] in the rational representation ring of Z/p.
// Ring rules: [Q] is the unit and [Q[Z/p]]^2 = p [Q[Z/p]].
class RepClass {
 public:
  explicit RepClass(long p, Rational q = 0, Rational reg = 0);

  long p() const { return p_; }
  const Rational& q_coeff() const { return q_; }
  const Rational& reg_coeff() const { return reg_; }

  static RepClass trivial(long p) { return RepClass(p, 1, 0); }
  static RepClass regular(long p) { return RepClass(p, 0, 1); }

  // Rank of the invariants: [Q] and [Q[Z/p]] both contribute 1.
  Rational fixed_rank() const { return q_ + reg_; }
  Rational dimension() const { return q_ + reg_ * p_; }

  RepClass& operator+=(const RepClass& o);
  RepClass& operator*=(const RepClass& o);
  friend RepClass operator+(RepClass a, const RepClass& b) { return a += b; }
  friend RepClass operator*(RepClass a, const RepClass& b) { return a *= b; }
  friend RepClass operator*(const Rational& s, const RepClass& a) { return RepClass(a.p_, s * a.q_, s * a.reg_); }
  friend bool operator==(const RepClass& a, const RepClass& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.reg_ == b.reg_;
  }

 private:
  long p_;
  Rational q_;
  Rational reg_;
};

// Class of the l-th exterior power of Q(zeta); zero for l >= p.
RepClass lambda_class(long p, long l);
// Class of the m-th exterior power of Q(zeta)^k.
RepClass lambda_class_total(long p, long k, long m);

Integer r_m(long p, long k, long m);
std::vector<Integer> r_vector(long p, long k);  // m = 0 .. k(p-1)

// Compositions of j into k parts, each in [0, p-1].
Integer a_j(long p, long k, long j);
Integer a_j_inclusion_exclusion(long p, long k, long j);
Integer s_m(long p, long k, long m);  // sum of a_j for j < m

struct RSumIdentities {
  Integer sum_all;
  Integer sum_even;
  Integer sum_odd;
  Integer alternating;
};

// Closed forms, each checked against direct summation of r_m.
RSumIdentities r_sum_identities(long p, long k);

}  // namespace crystalk
