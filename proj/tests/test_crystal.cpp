#include "crystalk/crystal.hpp"
#include "crystalk/repring.hpp"

#include <doctest.h>

using namespace crystalk;

namespace {

std::string render(const GroupExpression& e) { return e.render(); }
std::string evaluated(const GroupExpression& e) { return expr_evaluate(e).render(); }

GammaErrorKind kind_of(long p, const IntMatrix& rho) {
  try {
    validate_gamma(p, rho);
  } catch (const GammaError& e) {
    return e.kind();
  }
  FAIL("expected a GammaError");
  return GammaErrorKind::NotPrime;
}

}  // namespace

TEST_SUITE("crystal") {
  TEST_CASE("validation") {
    const GammaDescriptor g = validate_gamma(3, IntMatrix{{0, -1}, {1, -1}});
    CHECK(g.k == 1);
    CHECK(g.n == 2);
    CHECK(g.canonical);
    const GammaDescriptor d = validate_gamma(2, IntMatrix{{-1}});
    CHECK(d.k == 1);
    CHECK(d.n == 1);
    CHECK(kind_of(3, IntMatrix::identity(2)) == GammaErrorKind::WrongOrder);
    CHECK(kind_of(4, IntMatrix{{-1}}) == GammaErrorKind::NotPrime);
    CHECK(kind_of(3, IntMatrix{{0, -1}}) == GammaErrorKind::NotSquare);
    CHECK(kind_of(3, IntMatrix{{0, -1}, {1, 0}}) == GammaErrorKind::WrongOrder);
    CHECK(kind_of(2, IntMatrix{{1, 0}, {0, -1}}) == GammaErrorKind::NotFree);
    try {
      validate_gamma(2, IntMatrix{{1, 0}, {0, -1}});
    } catch (const GammaError& e) {
      CHECK(std::string(e.what()).rfind("NotFree: fixed vector (1,0)", 0) == 0);
    }
    // A conjugate of the canonical action is valid but not canonical.
    const GammaDescriptor c = validate_gamma(3, IntMatrix{{1, -1}, {3, -2}});
    CHECK(c.k == 1);
    CHECK_FALSE(c.canonical);
  }

  TEST_CASE("canonical descriptors") {
    CHECK(canonical_gamma(3, 1).rho == IntMatrix{{0, -1}, {1, -1}});
    IntMatrix neg(3, 3);
    for (std::size_t i = 0; i < 3; ++i) neg(i, i) = -1;
    CHECK(canonical_gamma(2, 3).rho == neg);
    CHECK(canonical_gamma(5, 2).n == 8);
    CHECK_THROWS_AS(canonical_gamma(6, 1), GammaError);
    CHECK_THROWS_AS(canonical_gamma(3, 0), GammaError);
  }

  TEST_CASE("finite subgroups, abelianization and euler characteristic") {
    const FiniteSubgroupData a = finite_subgroup_data(canonical_gamma(3, 1));
    CHECK(a.cokernel == FGAbelianGroup::cyclic(3));
    CHECK(a.class_count == 3);
    CHECK(a.fixed_point_count == 3);
    const FiniteSubgroupData b = finite_subgroup_data(canonical_gamma(2, 1));
    CHECK(b.cokernel == FGAbelianGroup::cyclic(2));
    CHECK(b.class_count == 2);
    const FiniteSubgroupData c = finite_subgroup_data(canonical_gamma(3, 2));
    CHECK(c.cokernel == FGAbelianGroup::elementary(3, 2));
    CHECK(c.class_count == 9);
    CHECK(abelianization(canonical_gamma(3, 1)) == FGAbelianGroup::elementary(3, 2));
    CHECK(abelianization(canonical_gamma(2, 1)) == FGAbelianGroup::elementary(2, 2));
    CHECK(abelianization(canonical_gamma(5, 2)) == FGAbelianGroup::elementary(5, 3));
    CHECK(euler_characteristic_quotient(canonical_gamma(3, 1)) == 2);
    CHECK(euler_characteristic_quotient(canonical_gamma(3, 2)) == 6);
    CHECK(euler_characteristic_quotient(canonical_gamma(2, 1)) == 1);
  }

  TEST_CASE("cohomology and homology") {
    for (long p : {2L, 3L, 5L})
      for (long k : {1L, 2L}) {
        const GammaDescriptor g = canonical_gamma(p, k);
        CHECK(render(cohomology_bgamma(g, 0)) == "Z");
        CHECK(render(cohomology_bgamma(g, 1)) == "0");
        CHECK(render(cohomology_quotient(g, 1)) == "0");
      }
    const GammaDescriptor g = canonical_gamma(3, 1);
    CHECK(render(cohomology_bgamma(g, 2)) == "Z (+) (Z/3)^2");
    CHECK(render(homology_bgamma(g, 3)) == "(Z/3)^3");
    CHECK(render(cohomology_quotient(g, 3)) == "0");
    CHECK(render(cohomology_quotient(canonical_gamma(3, 2), 3)) == "(Z/3)^3");
  }

  TEST_CASE("restriction map") {
    const GammaDescriptor g = canonical_gamma(3, 1);
    CHECK(restriction_map_data(g, 0).kernel.is_trivial());
    CHECK(restriction_map_data(g, 1).kernel.is_trivial());
    CHECK(restriction_map_data(canonical_gamma(5, 2), 3).kernel.is_trivial());
    CHECK(render(restriction_map_data(g, 2).image_torsion) == "(Z/3)^3");
  }

  TEST_CASE("complex K-theory") {
    const GammaDescriptor g = canonical_gamma(3, 1);
    CHECK(render(k_theory_bgamma(g, 0, Variant::cohomology)) == "Z^2 (+) Zp^[3]^6");
    CHECK(render(k_theory_bgamma(g, 1, Variant::cohomology)) == "0");
    for (long p : {2L, 3L, 5L})
      for (long k : {1L, 2L}) {
        const GammaDescriptor h = canonical_gamma(p, k);
        CHECK(k_theory_bgamma(h, 0, Variant::homology).is_torsion_free());
        CHECK(k_theory_quotient(h, 0, Variant::cohomology).is_torsion_free());
      }
    CHECK(render(k_theory_quotient(g, 1, Variant::cohomology)) == "0");
    CHECK(render(k_theory_quotient(g, 0, Variant::homology)) == "Z^2");
    CHECK(render(k_theory_quotient(canonical_gamma(3, 2), 1, Variant::cohomology)) == "T{T1; bounds=[3,0]}");
    CHECK(t1_bounds(3, 2) == std::vector<Integer>{3, 0});
    CHECK(t1_bounds(3, 1) == std::vector<Integer>{0});
  }

  TEST_CASE("real K-theory") {
    const GammaDescriptor g = canonical_gamma(3, 1);
    CHECK(evaluated(ko_theory(g, 1, Space::bgamma, Variant::cohomology)) == "Z/2");
    CHECK(evaluated(ko_theory(g, 0, Space::bgamma, Variant::cohomology)) == "Z (+) Z/2 (+) Zp^[3]^3");
    CHECK_THROWS_AS(ko_theory(canonical_gamma(2, 1), 0, Space::bgamma, Variant::cohomology), GammaError);
    try {
      cstar_k_theory(canonical_gamma(2, 2), 0, Field::real);
      FAIL("expected POdd");
    } catch (const GammaError& e) {
      CHECK(e.kind() == GammaErrorKind::POdd);
    }
  }

  TEST_CASE("group C*-algebras") {
    for (long n = 1; n <= 3; ++n) {
      const GammaDescriptor g = canonical_gamma(2, n);
      CHECK(render(cstar_k_theory(g, 0, Field::complex)) == "Z^" + std::to_string(3 << (n - 1)));
      CHECK(render(cstar_k_theory(g, 1, Field::complex)) == "0");
    }
    const GammaDescriptor g = canonical_gamma(3, 1);
    CHECK(render(cstar_k_theory(g, 0, Field::complex)) == "Z^8");
    CHECK(render(cstar_k_theory(g, 1, Field::complex)) == "0");
    CHECK(d_ev(g) == 8);
    CHECK(d_odd(g) == 0);
    CHECK(evaluated(cstar_k_theory(g, 0, Field::real)) == "Z^4");
  }

  TEST_CASE("equivariant sequences") {
    const GammaDescriptor g = canonical_gamma(3, 1);
    const EquivariantSequences s = equivariant_exact_sequences(g, 0);
    CHECK(render(s.complex.left) == "Z^6");
    CHECK(render(s.complex.right) == "Z^2");
    CHECK(render(s.complex.middle) == "Z^8");
    REQUIRE(s.real);
    CHECK(render(s.real->left) == "Z^3");
    CHECK_FALSE(equivariant_exact_sequences(canonical_gamma(2, 1), 0).real);
  }

  TEST_CASE("connective real K-homology") {
    const GammaDescriptor g = canonical_gamma(3, 1);
    CHECK(evaluated(connective_ko(g, 0, Space::bgamma)) == "Z");
    CHECK(evaluated(connective_ko(g, 2, Space::bgamma)) == "Z (+) Z/2");
    for (long m = 0; m <= 7; ++m)
      CHECK(expr_evaluate(connective_ko(g, m, Space::bgamma)).free_rank() ==
            expr_evaluate(connective_ko(g, m, Space::quotient)).free_rank());
  }

  TEST_CASE("brute force cohomology") {
    const GammaDescriptor g = canonical_gamma(3, 1);
    CHECK(render(brute_force_cohomology_bgamma(g, 0)) == "Z");
    CHECK(render(brute_force_cohomology_bgamma(g, 1)) == "0");
    const std::vector<GroupExpression> range = brute_force_cohomology_range(canonical_gamma(3, 2), 4);
    REQUIRE(range.size() == 5);
    for (long m = 0; m <= 4; ++m) CHECK(range[m] == cohomology_bgamma(canonical_gamma(3, 2), m));
  }

  TEST_CASE("property: closed forms against brute force on conjugated actions") {
    // rho conjugated by a unimodular matrix gives an isomorphic group.
    const IntMatrix u{{2, 1}, {1, 1}};
    const IntMatrix u_inv{{1, -1}, {-1, 2}};
    for (long p : {3L, 5L}) {
      const GammaDescriptor c = canonical_gamma(p, 1);
      IntMatrix big_u = IntMatrix::identity(c.n);
      IntMatrix big_inv = IntMatrix::identity(c.n);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          big_u(i, j) = u(i, j);
          big_inv(i, j) = u_inv(i, j);
        }
      const GammaDescriptor g = validate_gamma(p, big_u * c.rho * big_inv);
      for (long m = 0; m <= static_cast<long>(g.n); ++m)
        CHECK(brute_force_cohomology_bgamma(g, m) == cohomology_bgamma(c, m));
      CHECK(finite_subgroup_data(g).cokernel == finite_subgroup_data(c).cokernel);
      CHECK(abelianization(g) == abelianization(c));
    }
  }

  TEST_CASE("property: universal coefficients and the consistency triangle") {
    for (long p : {2L, 3L, 5L, 7L})
      for (long k : {1L, 2L}) {
        const GammaDescriptor g = canonical_gamma(p, k);
        Integer even = 0, odd = 0;
        const std::vector<Integer> r = r_vector(p, k);
        for (std::size_t l = 0; l < r.size(); ++l) (l % 2 == 0 ? even : odd) += r[l];
        CHECK(d_ev(g) == (p - 1) * power_of(p, k) + even);
        CHECK(d_odd(g) == odd);
        for (long m = 0; m <= static_cast<long>(g.n) + 1; ++m) {
          const GroupExpression up = cohomology_bgamma(g, m), next = cohomology_bgamma(g, m + 1);
          CHECK(homology_bgamma(g, m) == expr_hom_dual(up) + expr_ext_dual(next));
          const GroupExpression qup = cohomology_quotient(g, m), qnext = cohomology_quotient(g, m + 1);
          CHECK(homology_quotient(g, m) == expr_hom_dual(qup) + expr_ext_dual(qnext));
        }
      }
  }
}
