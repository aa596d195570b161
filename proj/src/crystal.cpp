#include "crystalk/crystal.hpp"

#include "crystalk/linalg.hpp"
#include "crystalk/repring.hpp"
#include "crystalk/zpmod.hpp"

#include <algorithm>
#include <sstream>

namespace crystalk {

std::string to_string(GammaErrorKind kind) {
  switch (kind) {
    case GammaErrorKind::NotPrime: return "NotPrime";
    case GammaErrorKind::NotSquare: return "NotSquare";
    case GammaErrorKind::WrongOrder: return "WrongOrder";
    case GammaErrorKind::NotFree: return "NotFree";
    case GammaErrorKind::BadRank: return "BadRank";
    case GammaErrorKind::CokernelMismatch: return "CokernelMismatch";
    case GammaErrorKind::POdd: return "POdd";
  }
  return "Unknown";
}

GammaError::GammaError(GammaErrorKind kind, const std::string& detail)
    : std::invalid_argument(to_string(kind) + ": " + detail), kind_(kind) {}

namespace {

IntMatrix cyclotomic_block_sum(long p, long k) {
  IntMatrix rho;
  const IntMatrix block = make_cyclotomic(p).action();
  for (long i = 0; i < k; ++i) rho = block_diagonal(rho, block);
  return rho;
}

std::string vector_text(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

void require_p_odd(const GammaDescriptor& g) {
  if (g.p == 2) throw GammaError(GammaErrorKind::POdd, "p odd required for real K-theory results");
}

long mod8(long m) { return ((m % 8) + 8) % 8; }

// r_m, s_m and p^k for one (p, k).
struct Numbers {
  long p, k, n;
  std::vector<Integer> r;
  std::vector<Integer> s;  // s[m] for 0 <= m <= n + 1
  Integer pk;

  explicit Numbers(const GammaDescriptor& g) : p(g.p), k(g.k), n(static_cast<long>(g.n)) {
    r = r_vector(p, k);
    for (long m = 0; m <= n + 1; ++m) s.push_back(s_m(p, k, m));
    pk = power_of(p, static_cast<unsigned long>(k));
  }
  Integer r_at(long m) const { return (m < 0 || m > n) ? Integer(0) : r[static_cast<std::size_t>(m)]; }
  Integer s_at(long m) const {
    if (m <= 0) return 0;
    return m > n ? pk : s[static_cast<std::size_t>(m)];
  }
  Integer r_parity(long parity) const {
    Integer t = 0;
    for (long l = parity; l <= n; l += 2) t += r_at(l);
    return t;
  }
  Integer point_count() const { return (p - 1) * pk; }
  Integer real_point_count() const { return pk * (p - 1) / 2; }
};

bool is_even(long m) { return m % 2 == 0; }

}  // namespace

GammaDescriptor validate_gamma(long p, const IntMatrix& rho) {
  if (!is_prime(p)) throw GammaError(GammaErrorKind::NotPrime, "p = " + std::to_string(p) + " is not prime");
  if (!rho.is_square())
    throw GammaError(GammaErrorKind::NotSquare,
                     "rho is " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()));
  if (rho.is_identity()) throw GammaError(GammaErrorKind::WrongOrder, "rho is the identity");
  if (!matrix_power(rho, static_cast<unsigned long>(p)).is_identity())
    throw GammaError(GammaErrorKind::WrongOrder, "rho^" + std::to_string(p) + " is not the identity");
  const IntMatrix fixed = kernel_basis(rho - IntMatrix::identity(rho.rows()));
  if (fixed.cols() > 0) throw GammaError(GammaErrorKind::NotFree, "fixed vector " + vector_text(fixed.column(0)));
  const std::size_t n = rho.rows();
  if (n % static_cast<std::size_t>(p - 1) != 0)
    throw GammaError(GammaErrorKind::BadRank, "p - 1 = " + std::to_string(p - 1) + " does not divide n = " +
                                                  std::to_string(n));
  GammaDescriptor g;
  g.p = p;
  g.n = n;
  g.k = static_cast<long>(n / static_cast<std::size_t>(p - 1));
  g.rho = rho;
  g.canonical = (rho == cyclotomic_block_sum(p, g.k));
  return g;
}

GammaDescriptor canonical_gamma(long p, long k) {
  if (!is_prime(p)) throw GammaError(GammaErrorKind::NotPrime, "p = " + std::to_string(p) + " is not prime");
  if (k < 1) throw GammaError(GammaErrorKind::BadRank, "k = " + std::to_string(k) + " must be at least 1");
  return validate_gamma(p, cyclotomic_block_sum(p, k));
}

FiniteSubgroupData finite_subgroup_data(const GammaDescriptor& g) {
  FiniteSubgroupData d;
  d.cokernel = cokernel_structure(g.rho - IntMatrix::identity(g.n));
  const auto expected = FGAbelianGroup::elementary(g.p, static_cast<std::size_t>(g.k));
  if (!(d.cokernel == expected))
    throw GammaError(GammaErrorKind::CokernelMismatch,
                     "coker(rho - 1) = " + d.cokernel.to_string() + ", expected " + expected.to_string());
  d.class_count = power_of(g.p, static_cast<unsigned long>(g.k));
  d.fixed_point_count = d.cokernel.torsion_order();
  if (d.fixed_point_count != d.class_count) throw InternalError("fixed point count differs from class count");
  return d;
}

FGAbelianGroup abelianization(const GammaDescriptor& g) {
  FGAbelianGroup ab = direct_sum(finite_subgroup_data(g).cokernel, FGAbelianGroup::cyclic(g.p));
  if (!(ab == FGAbelianGroup::elementary(g.p, static_cast<std::size_t>(g.k + 1))))
    throw InternalError("abelianization is not (Z/p)^(k+1): " + ab.to_string());
  return ab;
}

Integer euler_characteristic_quotient(const GammaDescriptor& g) {
  const Integer chi = (g.p - 1) * power_of(g.p, static_cast<unsigned long>(g.k - 1));
  if (chi != r_sum_identities(g.p, g.k).alternating)
    throw InternalError("Euler characteristic disagrees with the alternating sum of r_m");
  return chi;
}

GroupExpression cohomology_bgamma(const GammaDescriptor& g, long m) {
  if (m < 0) throw std::invalid_argument("cohomology_bgamma: negative degree");
  const Numbers c(g);
  GroupExpression e = GroupExpression::free(c.r_at(m));
  if (is_even(m)) e += GroupExpression::elementary(g.p, c.s_at(m));
  return e;
}

GroupExpression homology_bgamma(const GammaDescriptor& g, long m) {
  if (m < 0) throw std::invalid_argument("homology_bgamma: negative degree");
  const Numbers c(g);
  GroupExpression e = GroupExpression::free(c.r_at(m));
  if (!is_even(m)) e += GroupExpression::elementary(g.p, c.s_at(m + 1));
  return e;
}

GroupExpression cohomology_quotient(const GammaDescriptor& g, long m) {
  if (m < 0) throw std::invalid_argument("cohomology_quotient: negative degree");
  const Numbers c(g);
  GroupExpression e = GroupExpression::free(c.r_at(m));
  if (!is_even(m) && m >= 3) e += GroupExpression::elementary(g.p, c.pk - c.s_at(m));
  return e;
}

GroupExpression homology_quotient(const GammaDescriptor& g, long m) {
  if (m < 0) throw std::invalid_argument("homology_quotient: negative degree");
  const Numbers c(g);
  GroupExpression e = GroupExpression::free(c.r_at(m));
  if (is_even(m) && m >= 2) e += GroupExpression::elementary(g.p, c.pk - c.s_at(m + 1));
  return e;
}

RestrictionData restriction_map_data(const GammaDescriptor& g, long m) {
  if (m < 0) throw std::invalid_argument("restriction_map_data: negative degree");
  RestrictionData d;
  if (!is_even(m)) return d;
  const Numbers c(g);
  d.kernel = GroupExpression::elementary(g.p, c.s_at(m));
  if (m >= 2) d.image_torsion = GroupExpression::elementary(g.p, c.s_at(m + 1));
  return d;
}

std::vector<Integer> t1_bounds(long p, long k) {
  const long n = k * (p - 1);
  const Integer pk = power_of(p, static_cast<unsigned long>(k));
  std::vector<Integer> b;
  for (long i = 1; i <= n / 2; ++i) b.push_back(pk - s_m(p, k, 2 * i + 1));
  return b;
}

std::vector<Integer> to_bounds(long p, long k, long degree) {
  const long d = mod8(degree);
  if (d % 2 == 0) throw std::invalid_argument("to_bounds: odd degree required");
  const long sign = ((d - 1) / 2) % 2 == 0 ? 1 : -1;
  const long n = k * (p - 1);
  const long layers = (n + 4 - sign) / 4;
  const Integer pk = power_of(p, static_cast<unsigned long>(k));
  std::vector<Integer> b;
  for (long i = 1; i < layers; ++i) b.push_back(pk - s_m(p, k, 4 * i + sign));
  return b;
}

std::string to_tag(long degree) { return "TO^" + std::to_string(mod8(degree)); }

GroupExpression k_theory_bgamma(const GammaDescriptor& g, long m, Variant v) {
  const Numbers c(g);
  const bool even = is_even(m);
  GroupExpression e = GroupExpression::free(c.r_parity(even ? 0 : 1));
  if (v == Variant::cohomology && even) e += GroupExpression::p_adic(g.p, c.point_count());
  if (v == Variant::homology && !even) e += GroupExpression::pruefer(g.p, c.point_count());
  return e;
}

GroupExpression k_theory_quotient(const GammaDescriptor& g, long m, Variant v) {
  const Numbers c(g);
  const bool even = is_even(m);
  GroupExpression e = GroupExpression::free(c.r_parity(even ? 0 : 1));
  const bool carries_t1 = (v == Variant::cohomology) ? !even : even;
  if (carries_t1) e += GroupExpression::unknown("T1", t1_bounds(g.p, g.k));
  return e;
}

namespace {

// Sum over l of KO_{sign * (m - l)}(pt)^{r_l}; cohomology uses KO^j(pt) = KO_{-j}(pt).
GroupExpression ko_point_sum(const Numbers& c, long m, Variant v) {
  GroupExpression e;
  for (long l = 0; l <= c.n; ++l) {
    const long degree = (v == Variant::homology) ? m - l : l - m;
    e += GroupExpression::ko_point(degree, c.r_at(l));
  }
  return e;
}

}  // namespace

GroupExpression ko_theory(const GammaDescriptor& g, long m, Space s, Variant v) {
  require_p_odd(g);
  const Numbers c(g);
  const bool even = is_even(m);
  GroupExpression e = ko_point_sum(c, m, v);
  if (s == Space::bgamma) {
    if (v == Variant::cohomology && even) e += GroupExpression::p_adic(g.p, c.real_point_count());
    if (v == Variant::homology && !even) e += GroupExpression::pruefer(g.p, c.real_point_count());
  } else {
    if (v == Variant::cohomology && !even) e += GroupExpression::unknown(to_tag(m), to_bounds(g.p, g.k, m));
    if (v == Variant::homology && even) e += GroupExpression::unknown(to_tag(m + 5), to_bounds(g.p, g.k, m + 5));
  }
  return e;
}

Integer d_ev(const GammaDescriptor& g) {
  const Numbers c(g);
  Integer d;
  if (g.p == 2) {
    d = 3 * power_of(2, static_cast<unsigned long>(g.n - 1));
  } else {
    const Integer big = power_of(2, static_cast<unsigned long>((g.p - 1) * g.k));
    const Integer pk1 = power_of(g.p, static_cast<unsigned long>(g.k - 1));
    d = (big + g.p - 1) / (2 * g.p) + (g.p - 1) * pk1 / 2 + (g.p - 1) * c.pk;
  }
  if (d != c.point_count() + c.r_parity(0)) throw InternalError("d_ev disagrees with (p-1)p^k + sum of even r_m");
  return d;
}

Integer d_odd(const GammaDescriptor& g) {
  const Numbers c(g);
  Integer d = 0;
  if (g.p != 2) {
    const Integer big = power_of(2, static_cast<unsigned long>((g.p - 1) * g.k));
    const Integer pk1 = power_of(g.p, static_cast<unsigned long>(g.k - 1));
    d = (big + g.p - 1) / (2 * g.p) - (g.p - 1) * pk1 / 2;
  }
  if (d != c.r_parity(1)) throw InternalError("d_odd disagrees with the sum of odd r_m");
  return d;
}

GroupExpression cstar_k_theory(const GammaDescriptor& g, long m, Field f) {
  if (f == Field::complex) return GroupExpression::free(is_even(m) ? d_ev(g) : d_odd(g));
  require_p_odd(g);
  const Numbers c(g);
  GroupExpression e = ko_point_sum(c, m, Variant::homology);
  if (is_even(m)) e += GroupExpression::free(c.real_point_count());
  return e;
}

GroupExpression equivariant_k_theory(const GammaDescriptor& g, long m, Field f, Variant v) {
  const Numbers c(g);
  const bool even = is_even(m);
  if (f == Field::complex)
    return GroupExpression::free(even ? c.point_count() + c.r_parity(0) : c.r_parity(1));
  require_p_odd(g);
  GroupExpression e = ko_point_sum(c, m, v);
  if (even) e += GroupExpression::free(c.real_point_count());
  return e;
}

EquivariantSequences equivariant_exact_sequences(const GammaDescriptor& g, long m) {
  const Numbers c(g);
  const bool even = is_even(m);
  auto check = [](const ShortExactSequence& s, const char* which) {
    const Integer l = expr_evaluate(s.left).free_rank();
    const Integer mid = expr_evaluate(s.middle).free_rank();
    const Integer r = expr_evaluate(s.right).free_rank();
    if (mid != l + r) throw InternalError(std::string(which) + " sequence: middle rank is not the sum of the flanks");
  };
  EquivariantSequences out;
  out.complex.left = even ? GroupExpression::free(c.point_count()) : GroupExpression{};
  out.complex.middle = cstar_k_theory(g, m, Field::complex);
  out.complex.right = k_theory_quotient(g, m, Variant::homology);
  check(out.complex, "complex");
  if (g.p != 2) {
    ShortExactSequence s;
    s.left = even ? GroupExpression::free(c.real_point_count()) : GroupExpression{};
    s.middle = cstar_k_theory(g, m, Field::real);
    s.right = ko_theory(g, m, Space::quotient, Variant::homology);
    check(s, "real");
    out.real = s;
  }
  return out;
}

GroupExpression connective_ko(const GammaDescriptor& g, long m, Space s) {
  require_p_odd(g);
  if (m < 0) throw std::invalid_argument("connective_ko: negative degree");
  const Numbers c(g);
  GroupExpression e;
  for (long i = 0; i <= c.n; ++i) e += GroupExpression::connective_ko_point(m - i, c.r_at(i));
  const std::string tag = "to_" + std::to_string(m);
  if (s == Space::bgamma && !is_even(m)) e += GroupExpression::unknown_finite(tag);
  // The quotient group is an extension of the BGamma group by to_m; recorded as a sum.
  if (s == Space::quotient && is_even(m) && m > 0) e += GroupExpression::unknown_finite(tag);
  return e;
}

GroupExpression brute_force_cohomology_bgamma(const GammaDescriptor& g, long m) {
  if (m < 0) throw std::invalid_argument("brute_force_cohomology_bgamma: negative degree");
  return brute_force_cohomology_range(g, m).back();
}

std::vector<GroupExpression> brute_force_cohomology_range(const GammaDescriptor& g, long m_max) {
  if (m_max < 0) throw std::invalid_argument("brute_force_cohomology_range: negative degree");
  const ZpModule lattice_dual = dual(ZpModule(g.p, g.rho));
  const long top = std::min(m_max, static_cast<long>(g.n));
  // E2 column data per exterior degree j: H^0, and the odd/even Tate groups.
  std::vector<FGAbelianGroup> h0, odd, even;
  for (long j = 0; j <= top; ++j) {
    const ZpModule coeff = exterior_power(lattice_dual, static_cast<std::size_t>(j));
    h0.push_back(group_cohomology(coeff, 0));
    odd.push_back(m_max - j >= 1 ? group_cohomology(coeff, 1) : FGAbelianGroup{});
    even.push_back(m_max - j >= 2 ? group_cohomology(coeff, 2) : FGAbelianGroup{});
  }
  std::vector<GroupExpression> out;
  for (long m = 0; m <= m_max; ++m) {
    FGAbelianGroup total;
    for (long j = 0; j <= std::min(m, top); ++j) {
      const long i = m - j;
      const auto idx = static_cast<std::size_t>(j);
      total = direct_sum(total, i == 0 ? h0[idx] : (i % 2 == 1 ? odd[idx] : even[idx]));
    }
    out.emplace_back(total);
  }
  return out;
}

}  // namespace crystalk
