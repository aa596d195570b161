#include "crystalk/report.hpp"

#include "crystalk/repring.hpp"
#include "crystalk/zpmod.hpp"

#include <json.hpp>

#include <functional>
#include <future>
#include <sstream>

namespace crystalk {

namespace {

struct Cell {
  std::string theorem;
  long degree;
  std::function<GroupExpression()> eval;
};

void add_cells(std::vector<Cell>& cells, const std::string& name, DegreeWindow w, bool nonnegative,
               std::function<GroupExpression(long)> f) {
  for (long m = w.lo; m <= w.hi; ++m) {
    if (nonnegative && m < 0) continue;
    cells.push_back({name, m, [f, m] { return expr_evaluate(f(m)); }});
  }
}

void run_oracles(const GammaDescriptor& g, TheoremReport& rep) {
  const ZpModule lattice(g.p, g.rho);
  const auto r = r_vector(g.p, g.k);
  std::vector<GroupExpression> brute;
  try {
    brute = brute_force_cohomology_range(g, static_cast<long>(g.n));
  } catch (const ModuleError& e) {
    rep.warnings.push_back(std::string("brute-force cohomology oracle skipped: ") + e.what());
  }
  for (std::size_t m = 0; m <= g.n; ++m) {
    const long mm = static_cast<long>(m);
    if (!brute.empty() && !(brute[m] == cohomology_bgamma(g, mm)))
      rep.warnings.push_back("oracle disagreement: brute-force H^" + std::to_string(m) + " = " + brute[m].render() +
                             " but the closed form gives " + cohomology_bgamma(g, mm).render());
    try {
      const std::size_t fixed = invariants(exterior_power(lattice, m)).rank;
      if (Integer(static_cast<unsigned long>(fixed)) != r[m])
        rep.warnings.push_back("oracle disagreement: invariant rank of exterior power " + std::to_string(m) + " is " +
                               std::to_string(fixed) + " but r_" + std::to_string(m) + " = " + r[m].get_str());
    } catch (const ModuleError& e) {
      rep.warnings.push_back("r_" + std::to_string(m) + " oracle skipped: " + e.what());
    }
  }
}

nlohmann::json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

}  // namespace

TheoremReport build_report(const GammaDescriptor& g, const ReportOptions& opts) {
  TheoremReport rep;
  rep.descriptor = g;
  const FiniteSubgroupData fsd = finite_subgroup_data(g);
  rep.cokernel = fsd.cokernel;
  rep.abelianization = abelianization(g);
  rep.scalars["class_count"] = fsd.class_count;
  rep.scalars["fixed_points"] = fsd.fixed_point_count;
  rep.scalars["euler"] = euler_characteristic_quotient(g);
  rep.scalars["d_ev"] = d_ev(g);
  rep.scalars["d_odd"] = d_odd(g);

  const long n = static_cast<long>(g.n);
  const DegreeWindow hom = opts.window.value_or(DegreeWindow{0, n});
  const DegreeWindow kw = opts.window.value_or(DegreeWindow{0, 1});
  const DegreeWindow kow = opts.window.value_or(DegreeWindow{0, 7});
  const bool odd = g.p != 2;

  std::vector<Cell> cells;
  add_cells(cells, "H_cohomology_BGamma", hom, true, [g](long m) { return cohomology_bgamma(g, m); });
  add_cells(cells, "H_homology_BGamma", hom, true, [g](long m) { return homology_bgamma(g, m); });
  add_cells(cells, "H_cohomology_quotient", hom, true, [g](long m) { return cohomology_quotient(g, m); });
  add_cells(cells, "H_homology_quotient", hom, true, [g](long m) { return homology_quotient(g, m); });
  add_cells(cells, "H_restriction_kernel", hom, true, [g](long m) { return restriction_map_data(g, m).kernel; });
  add_cells(cells, "H_restriction_image_torsion", hom, true,
            [g](long m) { return restriction_map_data(g, m).image_torsion; });
  add_cells(cells, "K_cohomology_BGamma", kw, false,
            [g](long m) { return k_theory_bgamma(g, m, Variant::cohomology); });
  add_cells(cells, "K_homology_BGamma", kw, false, [g](long m) { return k_theory_bgamma(g, m, Variant::homology); });
  add_cells(cells, "K_cohomology_quotient", kw, false,
            [g](long m) { return k_theory_quotient(g, m, Variant::cohomology); });
  add_cells(cells, "K_homology_quotient", kw, false,
            [g](long m) { return k_theory_quotient(g, m, Variant::homology); });
  add_cells(cells, "K_cstar", kw, false, [g](long m) { return cstar_k_theory(g, m, Field::complex); });
  add_cells(cells, "K_equivariant_cohomology", kw, false,
            [g](long m) { return equivariant_k_theory(g, m, Field::complex, Variant::cohomology); });
  add_cells(cells, "K_equivariant_homology", kw, false,
            [g](long m) { return equivariant_k_theory(g, m, Field::complex, Variant::homology); });
  if (odd) {
    add_cells(cells, "KO_cohomology_BGamma", kow, false,
              [g](long m) { return ko_theory(g, m, Space::bgamma, Variant::cohomology); });
    add_cells(cells, "KO_homology_BGamma", kow, false,
              [g](long m) { return ko_theory(g, m, Space::bgamma, Variant::homology); });
    add_cells(cells, "KO_cohomology_quotient", kow, false,
              [g](long m) { return ko_theory(g, m, Space::quotient, Variant::cohomology); });
    add_cells(cells, "KO_homology_quotient", kow, false,
              [g](long m) { return ko_theory(g, m, Space::quotient, Variant::homology); });
    add_cells(cells, "KO_cstar_real", kow, false, [g](long m) { return cstar_k_theory(g, m, Field::real); });
    add_cells(cells, "KO_equivariant_cohomology", kow, false,
              [g](long m) { return equivariant_k_theory(g, m, Field::real, Variant::cohomology); });
    add_cells(cells, "KO_equivariant_homology", kow, false,
              [g](long m) { return equivariant_k_theory(g, m, Field::real, Variant::homology); });
    add_cells(cells, "ko_BGamma", kow, true, [g](long m) { return connective_ko(g, m, Space::bgamma); });
    add_cells(cells, "ko_quotient", kow, true, [g](long m) { return connective_ko(g, m, Space::quotient); });
  } else {
    rep.warnings.push_back("KO and ko sections omitted: p odd required");
  }

  std::vector<GroupExpression> values(cells.size());
  if (opts.parallel) {
    std::vector<std::future<GroupExpression>> futures;
    for (const auto& c : cells) futures.push_back(std::async(std::launch::async, c.eval));
    for (std::size_t i = 0; i < cells.size(); ++i) values[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < cells.size(); ++i) values[i] = cells[i].eval();
  }
  for (std::size_t i = 0; i < cells.size(); ++i) rep.groups[cells[i].theorem][cells[i].degree] = values[i];

  rep.summary["K0_cstar"] = cstar_k_theory(g, 0, Field::complex).render();
  rep.summary["K1_cstar"] = cstar_k_theory(g, 1, Field::complex).render();
  if (odd)
    for (long m = 0; m < 8; ++m)
      rep.summary["KO" + std::to_string(m) + "_cstar_real"] = expr_evaluate(cstar_k_theory(g, m, Field::real)).render();

  if (!g.canonical)
    rep.warnings.push_back("rho is not the canonical cyclotomic block sum; closed forms depend only on (p, k)");
  if (opts.run_oracles) run_oracles(g, rep);
  return rep;
}

std::string render_json(const TheoremReport& r) {
  nlohmann::json j;
  nlohmann::json rho = nlohmann::json::array();
  for (std::size_t i = 0; i < r.descriptor.rho.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < r.descriptor.rho.cols(); ++c) row.push_back(integer_json(r.descriptor.rho(i, c)));
    rho.push_back(row);
  }
  j["descriptor"] = {{"p", r.descriptor.p},
                     {"n", r.descriptor.n},
                     {"k", r.descriptor.k},
                     {"canonical", r.descriptor.canonical},
                     {"rho", rho},
                     {"cokernel", r.cokernel.to_string()},
                     {"abelianization", r.abelianization.to_string()}};
  nlohmann::json scalars = nlohmann::json::object();
  for (const auto& [k, v] : r.scalars) scalars[k] = integer_json(v);
  j["scalars"] = scalars;
  nlohmann::json groups = nlohmann::json::object();
  for (const auto& [name, byDegree] : r.groups)
    for (const auto& [m, e] : byDegree) groups[name][std::to_string(m)] = e.render();
  j["groups"] = groups;
  j["summary"] = r.summary;
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

std::string render_text(const TheoremReport& r) {
  std::ostringstream os;
  const auto& d = r.descriptor;
  os << "Gamma = Z^" << d.n << " x| Z/" << d.p << "  (p = " << d.p << ", n = " << d.n << ", k = " << d.k
     << (d.canonical ? ", canonical rho" : ", supplied rho") << ")\n";
  os << "rho = " << d.rho.to_string() << "\n";
  os << "coker(rho - 1) = " << r.cokernel.to_string() << "\n";
  os << "abelianization = " << r.abelianization.to_string() << "\n";
  for (const auto& [k, v] : r.scalars) os << k << " = " << v.get_str() << "\n";
  for (const auto& [name, byDegree] : r.groups) {
    os << "\n[" << name << "]\n";
    for (const auto& [m, e] : byDegree) os << "  m = " << m << ": " << e.render() << "\n";
  }
  os << "\n[summary]\n";
  for (const auto& [k, v] : r.summary) os << "  " << k << " = " << v << "\n";
  if (!r.warnings.empty()) {
    os << "\n[warnings]\n";
    for (const auto& w : r.warnings) os << "  " << w << "\n";
  }
  return os.str();
}

}  // namespace crystalk
