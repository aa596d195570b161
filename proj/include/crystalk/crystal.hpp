#pragma once

#include "crystalk/abelian.hpp"
#include "crystalk/int_matrix.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crystalk {

enum class GammaErrorKind { NotPrime, NotSquare, WrongOrder, NotFree, BadRank, CokernelMismatch, POdd };

std::string to_string(GammaErrorKind kind);

// Validation failure; what() starts with the kind name.
class GammaError : public std::invalid_argument {
 public:
  GammaError(GammaErrorKind kind, const std::string& detail);
  GammaErrorKind kind() const { return kind_; }

 private:
  GammaErrorKind kind_;
};

// Gamma = Z^n semidirect Z/p, generator acting by rho; immutable once validated.
struct GammaDescriptor {
  long p = 0;
  std::size_t n = 0;
  long k = 0;
  IntMatrix rho;
  bool canonical = false;  // rho is the k-fold block sum of the cyclotomic companion
};

GammaDescriptor validate_gamma(long p, const IntMatrix& rho);
GammaDescriptor canonical_gamma(long p, long k);

struct FiniteSubgroupData {
  FGAbelianGroup cokernel;
  Integer class_count;
  Integer fixed_point_count;
};

FiniteSubgroupData finite_subgroup_data(const GammaDescriptor& g);
FGAbelianGroup abelianization(const GammaDescriptor& g);
Integer euler_characteristic_quotient(const GammaDescriptor& g);

enum class Variant { cohomology, homology };
enum class Space { bgamma, quotient };
enum class Field { complex, real };

GroupExpression cohomology_bgamma(const GammaDescriptor& g, long m);
GroupExpression homology_bgamma(const GammaDescriptor& g, long m);
GroupExpression cohomology_quotient(const GammaDescriptor& g, long m);
GroupExpression homology_quotient(const GammaDescriptor& g, long m);

struct RestrictionData {
  GroupExpression kernel;         // of H^m(Gamma) -> H^m(Z^n)^{Z/p}
  GroupExpression image_torsion;  // of H^m(Gamma) -> product of reduced H^m(P)
};
RestrictionData restriction_map_data(const GammaDescriptor& g, long m);

GroupExpression k_theory_bgamma(const GammaDescriptor& g, long m, Variant v);
GroupExpression k_theory_quotient(const GammaDescriptor& g, long m, Variant v);

// KO results carry unevaluated point-group summands; p odd.
GroupExpression ko_theory(const GammaDescriptor& g, long m, Space s, Variant v);

Integer d_ev(const GammaDescriptor& g);
Integer d_odd(const GammaDescriptor& g);
GroupExpression cstar_k_theory(const GammaDescriptor& g, long m, Field f);
// Equivariant K/KO of the proper classifying space.
GroupExpression equivariant_k_theory(const GammaDescriptor& g, long m, Field f, Variant v);

struct ShortExactSequence {
  GroupExpression left;
  GroupExpression middle;
  GroupExpression right;
};
struct EquivariantSequences {
  ShortExactSequence complex;
  std::optional<ShortExactSequence> real;  // p odd only
};
// 0 -> (point contributions) -> K_m(C*_r) -> K_m(quotient) -> 0, real and complex.
EquivariantSequences equivariant_exact_sequences(const GammaDescriptor& g, long m);

GroupExpression connective_ko(const GammaDescriptor& g, long m, Space s);

// Direct sum over i + j = m of H^i(Z/p; exterior^j of the dual lattice).
GroupExpression brute_force_cohomology_bgamma(const GammaDescriptor& g, long m);
// Degrees 0 .. m_max at once; each exterior power is built a single time.
std::vector<GroupExpression> brute_force_cohomology_range(const GammaDescriptor& g, long m_max);

// Filtration bounds of the undetermined torsion groups.
std::vector<Integer> t1_bounds(long p, long k);
std::vector<Integer> to_bounds(long p, long k, long degree);

std::string to_tag(long degree);

}  // namespace crystalk
