#include "crystalk/verify.hpp"

#include "crystalk/linalg.hpp"
#include "crystalk/repring.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <thread>

namespace crystalk {

namespace {

struct Cell {
  long m = -1;  // degree context for reproducers, -1 when not applicable
  long i = -1;
  std::function<std::vector<CheckResult>()> run;
};

std::string ctx(const char* key, long v) { return std::string(key) + "=" + std::to_string(v); }

std::string ctx2(long j, long i) { return "j=" + std::to_string(j) + ",i=" + std::to_string(i); }

CheckResult check(std::string suite, std::string name, std::string context, bool ok, std::string detail = {}) {
  return {std::move(suite), std::move(name), std::move(context), ok, ok ? std::string() : std::move(detail)};
}

std::string vs(const std::string& got, const std::string& want) { return "got " + got + ", expected " + want; }

std::string vs(const Integer& got, const Integer& want) { return vs(got.get_str(), want.get_str()); }

std::string vs(const FGAbelianGroup& got, const FGAbelianGroup& want) { return vs(got.to_string(), want.to_string()); }

std::string vs(const GroupExpression& got, const GroupExpression& want) { return vs(got.render(), want.render()); }

Integer ipow(long b, long e) { return power_of(b, static_cast<unsigned long>(e)); }

// Diagonal, nonnegative, positive part first, divisibility chain.
bool is_smith_shaped(const IntMatrix& d) {
  Integer prev = 1;
  bool zeros = false;
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (std::size_t c = 0; c < d.cols(); ++c) {
      const Integer& v = d(r, c);
      if (r != c) {
        if (v != 0) return false;
        continue;
      }
      if (v < 0) return false;
      if (v == 0) {
        zeros = true;
        continue;
      }
      if (zeros || !divides(prev, v)) return false;
      prev = v;
    }
  return true;
}

bool is_hermite_shaped(const IntMatrix& h) {
  std::size_t lead = 0;
  bool done = false;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::size_t c = lead;
    while (c < h.cols() && h(r, c) == 0) ++c;
    if (c == h.cols()) {
      done = true;
      continue;
    }
    if (done || h(r, c) <= 0) return false;
    for (std::size_t above = 0; above < r; ++above)
      if (h(above, c) < 0 || h(above, c) >= h(r, c)) return false;
    lead = c + 1;
  }
  return true;
}

FGAbelianGroup random_group(std::mt19937_64& rng) {
  static const long orders[] = {2, 3, 4, 5, 6, 8, 9, 12, 25, 27, 30};
  std::uniform_int_distribution<int> count(0, 3), pick(0, 10);
  std::vector<Integer> cyc;
  for (int t = count(rng); t > 0; --t) cyc.emplace_back(orders[pick(rng)]);
  return FGAbelianGroup(static_cast<std::size_t>(count(rng)), cyc);
}

GroupExpression random_expression(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> deg(-9, 9), mult(0, 3), kind(0, 4);
  GroupExpression e(random_group(rng));
  for (int t = 0; t < 3; ++t) {
    switch (kind(rng)) {
      case 0: e += GroupExpression::ko_point(deg(rng), mult(rng)); break;
      case 1: e += GroupExpression::connective_ko_point(deg(rng), mult(rng)); break;
      case 2: e += GroupExpression::unknown("T1", {Integer(mult(rng)), Integer(mult(rng))}); break;
      case 3: e += GroupExpression::elementary(3, mult(rng)); break;
      default: e += GroupExpression::unknown_finite("to_" + std::to_string(mult(rng))); break;
    }
  }
  return e;
}

std::vector<CheckResult> linalg_trial(std::uint64_t seed, std::size_t t) {
  std::mt19937_64 rng(seed + 7919 * t);
  std::uniform_int_distribution<std::size_t> dim(1, 5), inner(1, 3);
  const std::size_t rows = dim(rng), cols = dim(rng) + 1;
  IntMatrix m = random_matrix(rows, cols, 6, rng);
  if (t % 3 == 0) {  // force rank deficiency
    const std::size_t r = inner(rng);
    m = random_matrix(rows, r, 4, rng) * random_matrix(r, cols, 4, rng);
  }
  const std::string c = "trial=" + std::to_string(t) + " M=" + m.to_string();
  std::vector<CheckResult> out;

  const SmithForm s = smith_normal_form(m);
  out.push_back(check("linalg", "snf transforms unimodular", c, is_unimodular(s.U) && is_unimodular(s.V)));
  out.push_back(check("linalg", "snf U*M*V = D", c, s.U * m * s.V == s.D));
  out.push_back(check("linalg", "snf divisibility chain", c, is_smith_shaped(s.D), "D=" + s.D.to_string()));
  std::vector<Integer> diag;
  for (std::size_t d = 0; d < std::min(rows, cols); ++d)
    if (s.D(d, d) != 0) diag.push_back(s.D(d, d));
  out.push_back(check("linalg", "smith_invariants match D", c, smith_invariants(m) == diag));

  const HermiteForm h = hermite_normal_form(m);
  out.push_back(check("linalg", "hnf U*M = H", c, is_unimodular(h.U) && h.U * m == h.H));
  out.push_back(check("linalg", "hnf shape", c, is_hermite_shaped(h.H), "H=" + h.H.to_string()));

  const std::size_t rank = rational_rank(m);
  const IntMatrix k = kernel_basis(m);
  out.push_back(check("linalg", "kernel annihilated", c, k.cols() == 0 || (m * k).is_zero()));
  out.push_back(check("linalg", "kernel dimension", c, k.cols() == cols - rank,
                      vs(Integer(static_cast<unsigned long>(k.cols())), Integer(static_cast<unsigned long>(cols - rank)))));
  const FGAbelianGroup kc = cokernel_structure(k);
  out.push_back(check("linalg", "kernel purity", c, kc.is_free() && kc.free_rank() == rank,
                      "coker(K)=" + kc.to_string()));

  const FGAbelianGroup coker = cokernel_structure(m);
  out.push_back(check("linalg", "cokernel free rank", c, coker.free_rank() == rows - rank));
  const auto left = random_unimodular(rows, rng).first;
  const auto right = random_unimodular(cols, rng).first;
  out.push_back(check("linalg", "cokernel unimodular invariance", c, cokernel_structure(left * m * right) == coker,
                      vs(cokernel_structure(left * m * right), coker)));
  std::vector<Integer> diag_coker(diag);
  out.push_back(check("linalg", "cokernel matches snf", c, FGAbelianGroup(rows - rank, diag_coker) == coker));

  IntVector x(cols);
  std::uniform_int_distribution<long> e(-5, 5);
  for (auto& v : x) v = e(rng);
  const IntVector b = m * x;
  const auto sol = solve_integer(m, b);
  out.push_back(check("linalg", "solve consistent system", c, sol && m * *sol == b));
  return out;
}

std::vector<CheckResult> abelian_trial(std::uint64_t seed, std::size_t t) {
  std::mt19937_64 rng(seed + 104729 * t);
  const FGAbelianGroup a = random_group(rng), b = random_group(rng), c = random_group(rng);
  const std::string cx = "trial=" + std::to_string(t) + " A=" + a.to_string() + " B=" + b.to_string();
  std::vector<CheckResult> out;
  out.push_back(check("abelian", "direct_sum commutative", cx, direct_sum(a, b) == direct_sum(b, a)));
  out.push_back(check("abelian", "direct_sum associative", cx,
                      direct_sum(direct_sum(a, b), c) == direct_sum(a, direct_sum(b, c))));
  out.push_back(check("abelian", "double hom dual", cx, hom_dual(hom_dual(a)) == FGAbelianGroup::free(a.free_rank()),
                      vs(hom_dual(hom_dual(a)), FGAbelianGroup::free(a.free_rank()))));
  out.push_back(check("abelian", "double ext dual", cx, ext_dual(ext_dual(a)) == a.torsion_subgroup(),
                      vs(ext_dual(ext_dual(a)), a.torsion_subgroup())));
  out.push_back(check("abelian", "expression of a group renders like the group", cx,
                      GroupExpression(a).render() == a.to_string(), vs(GroupExpression(a).render(), a.to_string())));
  const GroupExpression e = random_expression(rng);
  const GroupExpression ev = expr_evaluate(e);
  out.push_back(check("abelian", "expr_evaluate idempotent", cx + " E=" + e.render(), expr_evaluate(ev) == ev,
                      vs(expr_evaluate(ev), ev)));
  const GroupExpression back = GroupExpression::parse(e.render());
  out.push_back(check("abelian", "render/parse round trip", cx + " E=" + e.render(), back == e, vs(back, e)));
  return out;
}

// Exterior degree j of the lattice: checkerboard, norm sequence and the r_j oracle.
std::vector<CheckResult> exterior_cell(const GammaDescriptor& g, long j, const std::vector<Integer>& r) {
  const ZpModule lattice(g.p, g.rho);
  const ZpModule m = exterior_power(lattice, static_cast<std::size_t>(j));
  const Integer a = a_j(g.p, g.k, j);
  std::vector<CheckResult> out;
  std::map<long, FGAbelianGroup> t;
  for (long i = 0; i <= 3; ++i) {
    t[i] = tate(m, i);
    const FGAbelianGroup want =
        (i + j) % 2 == 0 ? FGAbelianGroup::elementary(g.p, a.get_ui()) : FGAbelianGroup{};
    out.push_back(check("zpmod", "tate checkerboard", ctx2(j, i), t[i] == want, vs(t[i], want)));
  }
  const Invariants inv = invariants(m);
  const FGAbelianGroup coinv = coinvariants(m);
  out.push_back(check("zpmod", "rank coinvariants = rank invariants", ctx("j", j), coinv.free_rank() == inv.rank));
  out.push_back(check("zpmod", "torsion of coinvariants = tate^1", ctx("j", j), coinv.torsion_subgroup() == t[1],
                      vs(coinv.torsion_subgroup(), t[1])));
  const Integer fixed(static_cast<unsigned long>(inv.rank));
  out.push_back(check("repring", "r_m matches invariant rank of exterior power", ctx("m", j), r[j] == fixed,
                      vs(r[j], fixed)));
  if (m.rank() <= 300) {
    for (long i = -3; i <= -1; ++i) t[i] = tate(m, i);
    for (long i = 4; i <= 5; ++i) t[i] = tate(m, i);
    bool periodic = true;
    for (long i = -3; i <= 3; ++i) periodic = periodic && t[i] == t[i + 2];
    out.push_back(check("zpmod", "tate 2-periodicity on [-3,3]", ctx("j", j), periodic));
  }
  return out;
}

std::vector<CheckResult> random_module_trial(long p, std::uint64_t seed, std::size_t t) {
  std::mt19937_64 rng(seed + 15485863 * t + static_cast<std::uint64_t>(p));
  const ZpModule m = random_order_p_module(p, 6, rng);
  const ZpModule d = dual(m);
  const std::string c = "p=" + std::to_string(p) + " trial=" + std::to_string(t) + " A=" + m.action().to_string();
  std::vector<CheckResult> out;
  bool duality = true, periodic = true;
  std::string bad;
  for (long i = -2; i <= 2; ++i) {
    const FGAbelianGroup lhs = tate(m, i), rhs = tate(d, -i);
    if (!(lhs == rhs)) {
      duality = false;
      bad = "i=" + std::to_string(i) + ": " + vs(lhs, rhs);
    }
    periodic = periodic && lhs == tate(m, i + 2);
  }
  out.push_back(check("zpmod", "tate duality", c, duality, bad));
  out.push_back(check("zpmod", "tate 2-periodicity", c, periodic));
  const ZpModule free_part = tensor(make_regular(p), m);
  bool acyclic = true;
  for (long i = -1; i <= 1; ++i) acyclic = acyclic && tate(free_part, i).is_trivial();
  out.push_back(check("zpmod", "free module acyclic", c, acyclic));
  out.push_back(check("zpmod", "order p after dual and tensor", c,
                      matrix_power(d.action(), static_cast<unsigned long>(p)).is_identity() &&
                          matrix_power(free_part.action(), static_cast<unsigned long>(p)).is_identity()));
  return out;
}

std::vector<CheckResult> zpmod_fixed(const GammaDescriptor& g) {
  const long p = g.p;
  const ZpModule lattice(p, g.rho);
  std::vector<CheckResult> out;
  auto order_ok = [p](const ZpModule& m) {
    return matrix_power(m.action(), static_cast<unsigned long>(p)).is_identity();
  };
  out.push_back(check("zpmod", "order p: lattice", "", order_ok(lattice)));
  out.push_back(check("zpmod", "order p: dual", "", order_ok(dual(lattice))));
  out.push_back(check("zpmod", "order p: tensor with regular", "", order_ok(tensor(lattice, make_regular(p)))));
  if (g.n >= 2) out.push_back(check("zpmod", "order p: exterior square", "", order_ok(exterior_power(lattice, 2))));
  for (const ZpModule& x : {make_trivial(p, 1), make_cyclotomic(p), lattice}) {
    if (x.rank() * static_cast<std::size_t>(p) > 200) continue;
    const ZpModule f = tensor(make_regular(p), x);
    bool acyclic = true;
    for (long i = -1; i <= 2; ++i) acyclic = acyclic && tate(f, i).is_trivial();
    out.push_back(check("zpmod", "free module acyclic", "rank=" + std::to_string(f.rank()), acyclic));
  }
  return out;
}

std::vector<CheckResult> repring_cell(const GammaDescriptor& g, const std::vector<Integer>& r) {
  const long p = g.p, k = g.k, n = static_cast<long>(g.n);
  std::vector<CheckResult> out;
  for (long l = 1; l <= p - 1; ++l) {
    const RepClass lhs = lambda_class(p, l) + lambda_class(p, l - 1);
    const RepClass rhs = Rational(binomial(p, l), Integer(p)) * RepClass::regular(p);
    out.push_back(check("repring", "consecutive exterior classes", ctx("l", l), lhs == rhs));
  }
  if (p != 2) {
    RepClass total(p);
    for (long l = 0; l < p; ++l) total += lambda_class(p, l);
    const RepClass want = RepClass::trivial(p) + Rational(ipow(2, p - 1) - 1, Integer(p)) * RepClass::regular(p);
    out.push_back(check("repring", "sum of exterior classes", "", total == want));
  }
  for (long m = 0; m <= n; ++m) {
    const Rational dim = lambda_class_total(p, k, m).dimension();
    out.push_back(check("repring", "class dimension is binomial", ctx("m", m), dim == Rational(binomial(n, m))));
  }
  Integer alternating = 0, all = 0, even = 0;
  for (long m = 0; m <= n; ++m) {
    alternating += (m % 2 == 0) ? r[m] : Integer(-r[m]);
    all += r[m];
    if (m % 2 == 0) even += r[m];
  }
  const Integer rh = (p - 1) * ipow(p, k - 1);
  out.push_back(check("repring", "alternating sum of r_m", "", alternating == rh, vs(alternating, rh)));
  const Integer want_all = p == 2 ? ipow(2, k - 1) : (ipow(2, (p - 1) * k) - 1) / p + 1;
  out.push_back(check("repring", "sum of r_m", "", all == want_all, vs(all, want_all)));
  if (p != 2) {
    const Integer want_even = (ipow(2, (p - 1) * k) + p - 1) / (2 * p) + rh / 2;
    out.push_back(check("repring", "sum of even r_m", "", even == want_even, vs(even, want_even)));
  }
  const RSumIdentities ids = r_sum_identities(p, k);
  out.push_back(check("repring", "sum identities record", "", ids.sum_all == all && ids.sum_even == even));
  if (k == 1 && p != 2)
    for (long m = 0; m <= n; ++m) {
      const Integer want = (binomial(p - 1, m) + (m % 2 == 0 ? 1 : -1) * Integer(p - 1)) / p;
      out.push_back(check("repring", "k = 1 closed form", ctx("m", m), r[m] == want, vs(r[m], want)));
    }
  Integer asum = 0;
  for (long j = 0; j <= n; ++j) {
    const Integer a = a_j(p, k, j);
    asum += a;
    out.push_back(check("repring", "a_j symmetric", ctx("j", j), a == a_j(p, k, n - j)));
    out.push_back(check("repring", "a_j by inclusion-exclusion", ctx("j", j), a == a_j_inclusion_exclusion(p, k, j)));
  }
  out.push_back(check("repring", "sum of a_j is p^k", "", asum == ipow(p, k), vs(asum, ipow(p, k))));
  return out;
}

std::vector<CheckResult> structure_cell(const GammaDescriptor& g) {
  const Integer pk = ipow(g.p, g.k);
  const FiniteSubgroupData f = finite_subgroup_data(g);
  const FGAbelianGroup want = FGAbelianGroup::elementary(g.p, static_cast<std::size_t>(g.k));
  std::vector<CheckResult> out;
  out.push_back(check("crystal", "coker(rho - 1)", "", f.cokernel == want, vs(f.cokernel, want)));
  out.push_back(check("crystal", "class count p^k", "", f.class_count == pk, vs(f.class_count, pk)));
  out.push_back(check("crystal", "fixed points p^k", "", f.fixed_point_count == pk, vs(f.fixed_point_count, pk)));
  const Integer by_factors = ipow(g.p, static_cast<long>(f.cokernel.torsion().size()));
  out.push_back(check("crystal", "fixed points = p^(number of invariant factors)", "",
                      f.fixed_point_count == by_factors && f.cokernel.torsion_order() == pk));
  const FGAbelianGroup ab = abelianization(g);
  const FGAbelianGroup ab_want = FGAbelianGroup::elementary(g.p, static_cast<std::size_t>(g.k + 1));
  out.push_back(check("crystal", "abelianization", "", ab == ab_want, vs(ab, ab_want)));
  return out;
}

std::vector<CheckResult> theorem_cell(const GammaDescriptor& g, const std::vector<Integer>& r) {
  const long p = g.p, k = g.k, n = static_cast<long>(g.n);
  const Integer pk = ipow(p, k);
  auto r_at = [&](long m) { return (m < 0 || m > n) ? Integer(0) : r[m]; };
  Integer r_even = 0, r_odd = 0;
  for (long m = 0; m <= n; ++m) (m % 2 == 0 ? r_even : r_odd) += r[m];
  std::vector<CheckResult> out;

  const Integer dev = d_ev(g), dodd = d_odd(g);
  out.push_back(check("crystal", "d_ev = (p-1)p^k + even r", "", dev == (p - 1) * pk + r_even,
                      vs(dev, (p - 1) * pk + r_even)));
  out.push_back(check("crystal", "d_odd = odd r", "", dodd == r_odd, vs(dodd, r_odd)));
  for (long m = 0; m <= 1; ++m) {
    const EquivariantSequences s = equivariant_exact_sequences(g, m);
    const Integer flank = expr_evaluate(s.complex.left).free_rank() + expr_evaluate(s.complex.right).free_rank();
    const Integer d = m == 0 ? dev : dodd;
    out.push_back(check("crystal", "d equals the rank of the sequence flanks", ctx("m", m), flank == d, vs(flank, d)));
    const GroupExpression c = cstar_k_theory(g, m, Field::complex);
    out.push_back(check("crystal", "complex C*-algebra K-theory is free", ctx("m", m),
                        c.is_torsion_free() && c == GroupExpression::free(d), c.render()));
    const GroupExpression eq = equivariant_k_theory(g, m, Field::complex, Variant::homology);
    out.push_back(check("crystal", "assembly: C*-algebra = equivariant K-homology", ctx("m", m), eq == c, vs(eq, c)));
  }

  for (long m = 0; m <= n; ++m) {
    const GroupExpression h = cohomology_bgamma(g, m), h1 = cohomology_bgamma(g, m + 1);
    const GroupExpression want = expr_hom_dual(h) + expr_ext_dual(h1);
    const GroupExpression got = homology_bgamma(g, m);
    out.push_back(check("crystal", "UCT: BGamma homology from cohomology", ctx("m", m), got == want, vs(got, want)));
    const GroupExpression q = cohomology_quotient(g, m), q1 = cohomology_quotient(g, m + 1);
    const GroupExpression qwant = expr_hom_dual(q) + expr_ext_dual(q1);
    const GroupExpression qgot = homology_quotient(g, m);
    out.push_back(check("crystal", "UCT: quotient homology from cohomology", ctx("m", m), qgot == qwant,
                        vs(qgot, qwant)));
  }

  for (long m = 1; 2 * m <= n; ++m) {
    const Integer s2 = s_m(p, k, 2 * m), s3 = s_m(p, k, 2 * m + 1);
    const std::string c = ctx("m", m);
    out.push_back(check("crystal", "s_2m + s_2m+1 <= 2p^k", c, s2 + s3 <= 2 * pk));
    out.push_back(check("crystal", "a_2m <= r_2m", c, a_j(p, k, 2 * m) <= r_at(2 * m)));
    out.push_back(check("crystal", "p-exponents alternate to zero", c,
                        s2 - pk + (pk - s3) + a_j(p, k, 2 * m) == 0 && pk - s3 >= 0));
    const GroupExpression terms[] = {cohomology_quotient(g, 2 * m), cohomology_bgamma(g, 2 * m),
                                     cohomology_quotient(g, 2 * m + 1), cohomology_bgamma(g, 2 * m + 1)};
    const GroupExpression wants[] = {
        GroupExpression::free(r_at(2 * m)), GroupExpression::free(r_at(2 * m)) + GroupExpression::elementary(p, s2),
        GroupExpression::free(r_at(2 * m + 1)) + GroupExpression::elementary(p, pk - s3),
        GroupExpression::free(r_at(2 * m + 1))};
    bool ok = true;
    std::string bad;
    for (int t = 0; t < 4; ++t)
      if (!(terms[t] == wants[t])) {
        ok = false;
        bad = vs(terms[t], wants[t]);
      }
    out.push_back(check("crystal", "five-term sequence terms", c, ok, bad));
  }

  if (p != 2) {
    const Integer points = pk * (p - 1) / 2;
    for (long m = 0; m < 8; ++m) {
      Integer want = (m % 2 == 0) ? points : Integer(0), want_bg = 0, want_ko = 0;
      for (long l = 0; l <= n; ++l) {
        if (((m - l) % 4 + 4) % 4 == 0) want += r[l];
        if (((l - m) % 4 + 4) % 4 == 0) want_bg += r[l];
        if (l <= m && (m - l) % 4 == 0) want_ko += r[l];
      }
      const Integer got = expr_evaluate(cstar_k_theory(g, m, Field::real)).free_rank();
      out.push_back(check("crystal", "real C*-algebra rational rank", ctx("m", m), got == want, vs(got, want)));
      const Integer got_bg = expr_evaluate(ko_theory(g, m, Space::bgamma, Variant::cohomology)).free_rank();
      out.push_back(check("crystal", "KO cohomology rational rank", ctx("m", m), got_bg == want_bg, vs(got_bg, want_bg)));
      const Integer got_ko = expr_evaluate(connective_ko(g, m, Space::bgamma)).free_rank();
      out.push_back(check("crystal", "connective ko rank after inverting p", ctx("m", m), got_ko == want_ko,
                          vs(got_ko, want_ko)));
      const EquivariantSequences s = equivariant_exact_sequences(g, m);
      const GroupExpression eq = expr_evaluate(equivariant_k_theory(g, m, Field::real, Variant::homology));
      const GroupExpression mid = expr_evaluate(s.real->middle);
      out.push_back(check("crystal", "assembly: real C*-algebra = equivariant KO-homology", ctx("m", m), eq == mid,
                          vs(eq, mid)));
    }
  }
  return out;
}

std::vector<CheckResult> brute_force_cell(const GammaDescriptor& g) {
  std::vector<CheckResult> out;
  const auto brute = brute_force_cohomology_range(g, static_cast<long>(g.n));
  for (long m = 0; m <= static_cast<long>(g.n); ++m) {
    const GroupExpression closed = cohomology_bgamma(g, m);
    out.push_back(check("crystal", "brute-force cohomology of BGamma", ctx("m", m), brute[m] == closed,
                        vs(brute[m], closed)));
  }
  return out;
}

std::vector<std::exception_ptr> execute(std::vector<Cell>& cells, std::vector<std::vector<CheckResult>>& results,
                                        bool parallel) {
  std::vector<std::exception_ptr> errors(cells.size());
  auto work = [&](std::size_t idx) {
    try {
      results[idx] = cells[idx].run();
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  };
  if (!parallel) {
    for (std::size_t idx = 0; idx < cells.size(); ++idx) work(idx);
    return errors;
  }
  std::atomic<std::size_t> next{0};
  const unsigned workers = std::max(2u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t idx = next++; idx < cells.size(); idx = next++) work(idx);
    });
  for (auto& th : pool) th.join();
  return errors;
}

}  // namespace

IntMatrix random_matrix(std::size_t rows, std::size_t cols, long bound, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> e(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = e(rng);
  return m;
}

std::pair<IntMatrix, IntMatrix> random_unimodular(std::size_t n, std::mt19937_64& rng, int steps) {
  IntMatrix u = IntMatrix::identity(n), inv = IntMatrix::identity(n);
  if (n < 2) return {u, inv};
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    const std::size_t a = idx(rng), b = idx(rng);
    const long c = coef(rng);
    if (a == b || c == 0) continue;
    // u <- E u with E = I + c e_ab; inv <- inv E^-1.
    for (std::size_t j = 0; j < n; ++j) u(a, j) += c * u(b, j);
    for (std::size_t i = 0; i < n; ++i) inv(i, b) -= c * inv(i, a);
  }
  return {u, inv};
}

ZpModule random_order_p_module(long p, std::size_t max_rank, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  const std::size_t pp = static_cast<std::size_t>(p);
  IntMatrix a;
  std::size_t rank = 0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    ZpModule piece = make_trivial(p, 1);
    switch (kind(rng)) {
      case 1: piece = make_cyclotomic(p); break;
      case 2: piece = make_regular(p); break;
      default: break;
    }
    if (rank + piece.rank() > max_rank) continue;
    a = rank == 0 ? piece.action() : block_diagonal(a, piece.action());
    rank += piece.rank();
  }
  if (rank == 0) a = (pp - 1 <= max_rank ? make_cyclotomic(p) : make_trivial(p, 1)).action();
  const auto [u, inv] = random_unimodular(a.rows(), rng);
  return ZpModule(p, u * a * inv);
}

std::vector<CheckResult> run_verification(const GammaDescriptor& g, const VerifyOptions& opts) {
  const std::vector<Integer> r = r_vector(g.p, g.k);
  std::vector<Cell> cells;
  for (std::size_t t = 0; t < opts.random_trials; ++t) {
    cells.push_back({-1, -1, [seed = opts.seed, t] { return linalg_trial(seed, t); }});
    cells.push_back({-1, -1, [seed = opts.seed, t] { return abelian_trial(seed, t); }});
    cells.push_back({-1, -1, [p = g.p, seed = opts.seed, t] { return random_module_trial(p, seed, t); }});
  }
  cells.push_back({-1, -1, [&g] { return zpmod_fixed(g); }});
  for (long j = static_cast<long>(g.n); j >= 0; --j)  // largest first for better parallel balance
    cells.push_back({j, -1, [&g, j, &r] { return exterior_cell(g, j, r); }});
  cells.push_back({-1, -1, [&g, &r] { return repring_cell(g, r); }});
  cells.push_back({-1, -1, [&g] { return structure_cell(g); }});
  cells.push_back({-1, -1, [&g, &r] { return theorem_cell(g, r); }});
  cells.push_back({-1, -1, [&g] { return brute_force_cell(g); }});

  std::vector<std::vector<CheckResult>> results(cells.size());
  const auto errors = execute(cells, results, opts.parallel);

  std::vector<CheckResult> out;
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    if (errors[idx]) {
      try {
        std::rethrow_exception(errors[idx]);
      } catch (const InternalError& e) {
        auto field = [](long v) { return v < 0 ? std::string("-") : std::to_string(v); };
        throw VerificationAborted("internal error: " + std::string(e.what()) + "; reproducer: p=" +
                                  std::to_string(g.p) + " k=" + std::to_string(g.k) + " m=" + field(cells[idx].m) +
                                  " i=" + field(cells[idx].i));
      } catch (const std::exception& e) {
        out.push_back(check("runner", "cell raised", "cell=" + std::to_string(idx), false, e.what()));
      }
    }
    for (auto& c : results[idx]) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace crystalk
