#pragma once

#include "crystalk/abelian.hpp"
#include "crystalk/int_matrix.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace crystalk {

struct SmithForm {
  IntMatrix D;  // D = U * M * V
  IntMatrix U;
  IntMatrix V;
};

struct HermiteForm {
  IntMatrix H;  // H = U * M
  IntMatrix U;
};

// Dense pivoting reduction with transforms. Diagonal is positive with a
// divisibility chain, followed by zeros.
SmithForm smith_normal_form(const IntMatrix& m);

// Nonzero Smith invariants only (no transforms), ascending chain.
std::vector<Integer> smith_invariants(const IntMatrix& m);

// Row-style Hermite form: positive pivots, entries above a pivot in [0, pivot).
HermiteForm hermite_normal_form(const IntMatrix& m);

// Columns span the integer kernel of m; the span is saturated in Z^cols.
IntMatrix kernel_basis(const IntMatrix& m);

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

// Z^rows / column span of m.
FGAbelianGroup cokernel_structure(const IntMatrix& m);

std::size_t rational_rank(const IntMatrix& m);

// Echelon of the column lattice of a fixed matrix, reusable across many
// right-hand sides. Built from unimodular operations on the columns.
class LatticeSolver {
 public:
  explicit LatticeSolver(const IntMatrix& a, bool track_transform = true);
  ~LatticeSolver();
  LatticeSolver(LatticeSolver&&) noexcept;
  LatticeSolver& operator=(LatticeSolver&&) noexcept;

  std::size_t rank() const;
  // x with a * x = b, or nothing when no integer solution exists.
  std::optional<IntVector> solve(const IntVector& b) const;
  // Coordinates of every column of targets; nothing if any column fails.
  std::optional<IntMatrix> solve_columns(const IntMatrix& targets) const;
  // Saturated basis of {x : a * x = 0} as columns.
  IntMatrix kernel() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace crystalk
