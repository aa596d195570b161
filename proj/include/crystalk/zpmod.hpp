#pragma once

#include "crystalk/abelian.hpp"
#include "crystalk/int_matrix.hpp"

#include <cstddef>
#include <stdexcept>

namespace crystalk {

class ModuleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A Z[Z/p]-module structure on Z^rank: the matrix of the fixed generator t.
// Invariant: action^p = identity.
class ZpModule {
 public:
  ZpModule(long p, IntMatrix action);

  long p() const { return p_; }
  std::size_t rank() const { return action_.rows(); }
  const IntMatrix& action() const { return action_; }

  friend bool operator==(const ZpModule&, const ZpModule&) = default;

 private:
  long p_;
  IntMatrix action_;
};

ZpModule make_trivial(long p, std::size_t rank);
ZpModule make_regular(long p);
// Companion matrix of 1 + x + ... + x^(p-1) on the basis 1, z, ..., z^(p-2).
ZpModule make_cyclotomic(long p);

ZpModule direct_sum(const ZpModule& a, const ZpModule& b);
// Basis e_i (x) f_j in lexicographic order of (i, j).
ZpModule tensor(const ZpModule& a, const ZpModule& b);
// Basis: lexicographically ordered m-subsets; action is the m-th compound matrix.
ZpModule exterior_power(const ZpModule& m, std::size_t degree);
// Transpose action.
ZpModule dual(const ZpModule& m);

// Largest exterior-power rank accepted; CRYSTALK_MAX_EXT_DIM overrides 20000.
std::size_t max_exterior_dimension();

struct Invariants {
  std::size_t rank = 0;
  IntMatrix basis;  // columns span the saturated sublattice ker(action - 1)
};

Invariants invariants(const ZpModule& m);
FGAbelianGroup coinvariants(const ZpModule& m);
IntMatrix norm_matrix(const ZpModule& m);

// Tate cohomology, 2-periodic in i.
FGAbelianGroup tate(const ZpModule& m, long i);
FGAbelianGroup group_cohomology(const ZpModule& m, long i);
FGAbelianGroup group_homology(const ZpModule& m, long i);

}  // namespace crystalk
