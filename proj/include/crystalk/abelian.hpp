#pragma once

#include "crystalk/integer.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace crystalk {

// Z^free_rank (+) Z/d_1 (+) ... (+) Z/d_t with d_1 | d_2 | ... | d_t and every d_i >= 2.
// Two values compare equal iff the groups are isomorphic.
class FGAbelianGroup {
 public:
  FGAbelianGroup() = default;
  // Accepts arbitrary positive cyclic orders; units are dropped and the rest
  // are refactored into the invariant-factor chain.
  FGAbelianGroup(std::size_t free_rank, std::vector<Integer> cyclic_orders);

  static FGAbelianGroup free(std::size_t rank) { return FGAbelianGroup(rank, {}); }
  static FGAbelianGroup cyclic(const Integer& order) { return FGAbelianGroup(0, {order}); }
  static FGAbelianGroup elementary(const Integer& p, std::size_t count);

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }

  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_free() const { return torsion_.empty(); }
  bool is_finite() const { return free_rank_ == 0; }
  Integer torsion_order() const;
  FGAbelianGroup torsion_subgroup() const { return FGAbelianGroup(0, torsion_); }

  friend bool operator==(const FGAbelianGroup&, const FGAbelianGroup&) = default;

  // Primary-decomposition rendering in the expression grammar.
  std::string to_string() const;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

FGAbelianGroup direct_sum(const FGAbelianGroup& a, const FGAbelianGroup& b);
FGAbelianGroup hom_dual(const FGAbelianGroup& a);
FGAbelianGroup ext_dual(const FGAbelianGroup& a);
// KO_m(pt) with table Z, Z/2, Z/2, 0, Z, 0, 0, 0 by m mod 8; the connective
// version vanishes for m < 0.
FGAbelianGroup ko_point_table(long m, bool connective);

// Symbolic summands.
struct FreeZ {
  Integer rank;
  friend bool operator==(const FreeZ&, const FreeZ&) = default;
};
struct CyclicPrimePower {
  Integer prime;
  unsigned exponent = 1;
  Integer multiplicity;
  friend bool operator==(const CyclicPrimePower&, const CyclicPrimePower&) = default;
};
// p-adic integers, Zp-hat^rank.
struct PAdic {
  Integer prime;
  Integer rank;
  friend bool operator==(const PAdic&, const PAdic&) = default;
};
// Pruefer group Z/p^infinity, to the power rank.
struct Pruefer {
  Integer prime;
  Integer rank;
  friend bool operator==(const Pruefer&, const Pruefer&) = default;
};
// Copies of the periodic point group KO_degree(pt); degree kept in [0, 8).
struct KOPoint {
  long degree = 0;
  Integer multiplicity;
  friend bool operator==(const KOPoint&, const KOPoint&) = default;
};
// Copies of the connective point group ko_degree(pt); negative degrees vanish.
struct KoPoint {
  long degree = 0;
  Integer multiplicity;
  friend bool operator==(const KoPoint&, const KoPoint&) = default;
};
// An undetermined finite p-group known only through a filtration whose i-th
// layer is (Z/p)^t_i with t_i <= layer_bounds[i]. When bounded is false only
// finiteness is known and layer_bounds is empty.
struct UnknownPTorsion {
  std::string tag;
  std::vector<Integer> layer_bounds;
  bool bounded = true;
  friend bool operator==(const UnknownPTorsion&, const UnknownPTorsion&) = default;
};

using Summand = std::variant<FreeZ, CyclicPrimePower, PAdic, Pruefer, KOPoint, KoPoint, UnknownPTorsion>;

// A normalized direct sum of summands: like summands merged, zero summands
// dropped, canonical order.
class GroupExpression {
 public:
  GroupExpression() = default;
  explicit GroupExpression(const FGAbelianGroup& g);

  static GroupExpression free(const Integer& rank);
  static GroupExpression elementary(const Integer& p, const Integer& count);
  static GroupExpression p_adic(const Integer& p, const Integer& rank);
  static GroupExpression pruefer(const Integer& p, const Integer& rank);
  static GroupExpression ko_point(long degree, const Integer& multiplicity);
  static GroupExpression connective_ko_point(long degree, const Integer& multiplicity);
  static GroupExpression unknown(std::string tag, std::vector<Integer> bounds);
  static GroupExpression unknown_finite(std::string tag);

  GroupExpression& add(const Summand& s);
  GroupExpression& operator+=(const GroupExpression& other);
  friend GroupExpression operator+(GroupExpression a, const GroupExpression& b) { return a += b; }

  const std::vector<Summand>& summands() const { return summands_; }
  bool is_trivial() const { return summands_.empty(); }

  // Rank of the FreeZ part; point-group summands are not counted until evaluated.
  Integer free_rank() const;
  // True when every summand is FreeZ or CyclicPrimePower.
  bool is_finitely_generated_explicit() const;
  std::optional<FGAbelianGroup> to_group() const;
  bool has_unknown() const;
  // True when no summand can carry torsion.
  bool is_torsion_free() const;

  std::string render() const;
  static GroupExpression parse(const std::string& text);

  friend bool operator==(const GroupExpression&, const GroupExpression&) = default;

 private:
  void normalize();
  std::vector<Summand> summands_;
};

// Replaces point-group summands by their table values.
GroupExpression expr_evaluate(const GroupExpression& e);
// Hom(-, Z) and Ext(-, Z) of an evaluated expression. Finite unknown torsion
// is Ext-self-dual and Hom-trivial; PAdic and Pruefer summands are rejected.
GroupExpression expr_hom_dual(const GroupExpression& e);
GroupExpression expr_ext_dual(const GroupExpression& e);

}  // namespace crystalk
