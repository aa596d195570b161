#include "crystalk/zpmod.hpp"

#include "crystalk/linalg.hpp"

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <unordered_map>
#include <vector>

namespace crystalk {

namespace {

void require_prime(long p) {
  if (!is_prime(p)) throw ModuleError("NotPrime: p = " + std::to_string(p) + " is not prime");
}

void require_same_p(const ZpModule& a, const ZpModule& b) {
  if (a.p() != b.p())
    throw ModuleError("mismatched p: " + std::to_string(a.p()) + " vs " + std::to_string(b.p()));
}

long tate_parity(long i) { return ((i % 2) + 2) % 2; }

}  // namespace

ZpModule::ZpModule(long p, IntMatrix action) : p_(p), action_(std::move(action)) {
  require_prime(p);
  if (!action_.is_square()) throw ModuleError("action matrix must be square");
  if (!matrix_power(action_, static_cast<unsigned long>(p)).is_identity())
    throw ModuleError("WrongOrder: action^" + std::to_string(p) + " is not the identity");
}

ZpModule make_trivial(long p, std::size_t rank) { return ZpModule(p, IntMatrix::identity(rank)); }

ZpModule make_regular(long p) {
  require_prime(p);
  const auto n = static_cast<std::size_t>(p);
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a((i + 1) % n, i) = 1;
  return ZpModule(p, std::move(a));
}

ZpModule make_cyclotomic(long p) {
  require_prime(p);
  const auto n = static_cast<std::size_t>(p - 1);
  IntMatrix a(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) a(i + 1, i) = 1;
  for (std::size_t i = 0; i < n; ++i) a(i, n - 1) = -1;
  return ZpModule(p, std::move(a));
}

ZpModule direct_sum(const ZpModule& a, const ZpModule& b) {
  require_same_p(a, b);
  return ZpModule(a.p(), block_diagonal(a.action(), b.action()));
}

ZpModule tensor(const ZpModule& a, const ZpModule& b) {
  require_same_p(a, b);
  return ZpModule(a.p(), kronecker(a.action(), b.action()));
}

ZpModule dual(const ZpModule& m) { return ZpModule(m.p(), m.action().transpose()); }

std::size_t max_exterior_dimension() {
  if (const char* env = std::getenv("CRYSTALK_MAX_EXT_DIM")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw ModuleError(std::string("CRYSTALK_MAX_EXT_DIM is not a count: ") + env);
    }
  }
  return 20000;
}

ZpModule exterior_power(const ZpModule& m, std::size_t degree) {
  const std::size_t n = m.rank();
  if (degree > n)
    throw ModuleError("exterior degree " + std::to_string(degree) + " exceeds rank " + std::to_string(n));
  if (n > 64) throw ModuleError("exterior_power supports rank at most 64");
  const Integer dim_big = binomial(static_cast<long>(n), static_cast<long>(degree));
  if (dim_big > Integer(static_cast<unsigned long>(max_exterior_dimension())))
    throw ModuleError("exterior power of rank " + dim_big.get_str() + " exceeds the guardrail " +
                      std::to_string(max_exterior_dimension()) + " (set CRYSTALK_MAX_EXT_DIM to raise it)");
  const std::size_t dim = dim_big.get_ui();

  // Lexicographic enumeration of degree-subsets as bitmasks.
  std::vector<std::uint64_t> subsets;
  subsets.reserve(dim);
  std::vector<std::size_t> idx(degree);
  for (std::size_t i = 0; i < degree; ++i) idx[i] = i;
  while (true) {
    std::uint64_t mask = 0;
    for (std::size_t i : idx) mask |= std::uint64_t{1} << i;
    subsets.push_back(mask);
    std::size_t pos = degree;
    while (pos > 0 && idx[pos - 1] == n - degree + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < degree; ++i) idx[i] = idx[i - 1] + 1;
  }
  std::unordered_map<std::uint64_t, std::size_t> index_of;
  index_of.reserve(dim * 2);
  for (std::size_t i = 0; i < dim; ++i) index_of.emplace(subsets[i], i);

  std::vector<std::vector<std::pair<unsigned, Integer>>> columns(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (m.action()(i, j) != 0) columns[j].emplace_back(static_cast<unsigned>(i), m.action()(i, j));

  IntMatrix out(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    // Wedge the images of the basis vectors in the column subset, in order.
    std::unordered_map<std::uint64_t, Integer> acc{{0, Integer(1)}};
    for (std::size_t j = 0; j < n; ++j) {
      if (!((subsets[col] >> j) & 1)) continue;
      std::unordered_map<std::uint64_t, Integer> next;
      for (const auto& [mask, coef] : acc)
        for (const auto& [r, v] : columns[j]) {
          if ((mask >> r) & 1) continue;
          const int above = std::popcount(mask >> (r + 1));
          Integer& slot = next[mask | (std::uint64_t{1} << r)];
          if (above & 1)
            mpz_submul(slot.get_mpz_t(), coef.get_mpz_t(), v.get_mpz_t());
          else
            mpz_addmul(slot.get_mpz_t(), coef.get_mpz_t(), v.get_mpz_t());
        }
      acc = std::move(next);
    }
    for (const auto& [mask, coef] : acc)
      if (coef != 0) out(index_of.at(mask), col) = coef;
  }
  return ZpModule(m.p(), std::move(out));
}

Invariants invariants(const ZpModule& m) {
  IntMatrix basis = kernel_basis(m.action() - IntMatrix::identity(m.rank()));
  return Invariants{basis.cols(), std::move(basis)};
}

FGAbelianGroup coinvariants(const ZpModule& m) {
  return cokernel_structure(m.action() - IntMatrix::identity(m.rank()));
}

IntMatrix norm_matrix(const ZpModule& m) {
  IntMatrix power = IntMatrix::identity(m.rank());
  IntMatrix sum = power;
  for (long j = 1; j < m.p(); ++j) {
    power = power * m.action();
    sum = sum + power;
  }
  return sum;
}

namespace {

// lattice / (span of generators), where generators lie in the lattice spanned
// by the columns of basis.
FGAbelianGroup sublattice_quotient(const IntMatrix& basis, const IntMatrix& generators, const char* what) {
  if (basis.cols() == 0) return {};
  LatticeSolver coords(basis);
  auto c = coords.solve_columns(generators);
  if (!c) throw InternalError(std::string("tate: ") + what + " is not contained in its ambient lattice");
  FGAbelianGroup q = cokernel_structure(*c);
  if (q.free_rank() != 0) throw InternalError(std::string("tate: ") + what + " has infinite index");
  return q;
}

}  // namespace

FGAbelianGroup tate(const ZpModule& m, long i) {
  const IntMatrix n = norm_matrix(m);
  if (tate_parity(i) == 0) return sublattice_quotient(invariants(m).basis, n, "norm image");
  return sublattice_quotient(kernel_basis(n), m.action() - IntMatrix::identity(m.rank()), "augmentation image");
}

FGAbelianGroup group_cohomology(const ZpModule& m, long i) {
  if (i < 0) throw ModuleError("group_cohomology: negative degree");
  if (i == 0) return FGAbelianGroup::free(invariants(m).rank);
  return tate(m, i % 2 == 1 ? 1 : 0);
}

FGAbelianGroup group_homology(const ZpModule& m, long i) {
  if (i < 0) throw ModuleError("group_homology: negative degree");
  if (i == 0) return coinvariants(m);
  return tate(m, -i - 1);
}

}  // namespace crystalk
