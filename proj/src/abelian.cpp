#include "crystalk/abelian.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace crystalk {

FGAbelianGroup::FGAbelianGroup(std::size_t free_rank, std::vector<Integer> orders) : free_rank_(free_rank) {
  std::vector<Integer> a;
  for (auto& d : orders) {
    if (d <= 0) throw std::invalid_argument("FGAbelianGroup: cyclic orders must be positive");
    if (d != 1) a.push_back(std::move(d));
  }
  // Pairwise (gcd, lcm) replacement: afterwards a[i] | a[j] for i < j.
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      Integer g = gcd_of(a[i], a[j]);
      Integer l = (a[i] / g) * a[j];
      a[i] = g;
      a[j] = l;
    }
  for (auto& d : a)
    if (d != 1) torsion_.push_back(std::move(d));
}

FGAbelianGroup FGAbelianGroup::elementary(const Integer& p, std::size_t count) {
  return FGAbelianGroup(0, std::vector<Integer>(count, p));
}

Integer FGAbelianGroup::torsion_order() const {
  Integer o = 1;
  for (const auto& d : torsion_) o *= d;
  return o;
}

std::string FGAbelianGroup::to_string() const { return GroupExpression(*this).render(); }

FGAbelianGroup direct_sum(const FGAbelianGroup& a, const FGAbelianGroup& b) {
  std::vector<Integer> t = a.torsion();
  t.insert(t.end(), b.torsion().begin(), b.torsion().end());
  return FGAbelianGroup(a.free_rank() + b.free_rank(), std::move(t));
}

FGAbelianGroup hom_dual(const FGAbelianGroup& a) { return FGAbelianGroup::free(a.free_rank()); }

FGAbelianGroup ext_dual(const FGAbelianGroup& a) { return a.torsion_subgroup(); }

namespace {

long mod8(long m) { return ((m % 8) + 8) % 8; }

}  // namespace

FGAbelianGroup ko_point_table(long m, bool connective) {
  if (connective && m < 0) return {};
  switch (mod8(m)) {
    case 0:
    case 4:
      return FGAbelianGroup::free(1);
    case 1:
    case 2:
      return FGAbelianGroup::cyclic(2);
    default:
      return {};
  }
}

// ---------------------------------------------------------------------------
// GroupExpression

GroupExpression::GroupExpression(const FGAbelianGroup& g) {
  if (g.free_rank()) summands_.push_back(FreeZ{Integer(static_cast<unsigned long>(g.free_rank()))});
  for (const auto& d : g.torsion())
    for (const auto& [q, e] : factorize(d)) summands_.push_back(CyclicPrimePower{q, e, 1});
  normalize();
}

GroupExpression GroupExpression::free(const Integer& rank) {
  GroupExpression e;
  e.add(FreeZ{rank});
  return e;
}

GroupExpression GroupExpression::elementary(const Integer& p, const Integer& count) {
  GroupExpression e;
  e.add(CyclicPrimePower{p, 1, count});
  return e;
}

GroupExpression GroupExpression::p_adic(const Integer& p, const Integer& rank) {
  GroupExpression e;
  e.add(PAdic{p, rank});
  return e;
}

GroupExpression GroupExpression::pruefer(const Integer& p, const Integer& rank) {
  GroupExpression e;
  e.add(Pruefer{p, rank});
  return e;
}

GroupExpression GroupExpression::ko_point(long degree, const Integer& multiplicity) {
  GroupExpression e;
  e.add(KOPoint{degree, multiplicity});
  return e;
}

GroupExpression GroupExpression::connective_ko_point(long degree, const Integer& multiplicity) {
  GroupExpression e;
  e.add(KoPoint{degree, multiplicity});
  return e;
}

GroupExpression GroupExpression::unknown(std::string tag, std::vector<Integer> bounds) {
  GroupExpression e;
  e.add(UnknownPTorsion{std::move(tag), std::move(bounds), true});
  return e;
}

GroupExpression GroupExpression::unknown_finite(std::string tag) {
  GroupExpression e;
  e.add(UnknownPTorsion{std::move(tag), {}, false});
  return e;
}

GroupExpression& GroupExpression::add(const Summand& s) {
  summands_.push_back(s);
  normalize();
  return *this;
}

GroupExpression& GroupExpression::operator+=(const GroupExpression& other) {
  summands_.insert(summands_.end(), other.summands_.begin(), other.summands_.end());
  normalize();
  return *this;
}

namespace {

bool is_zero_summand(const Summand& s) {
  return std::visit(
      [](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FreeZ>) return x.rank == 0;
        if constexpr (std::is_same_v<T, CyclicPrimePower>) return x.multiplicity == 0;
        if constexpr (std::is_same_v<T, PAdic> || std::is_same_v<T, Pruefer>) return x.rank == 0;
        if constexpr (std::is_same_v<T, KOPoint>) return x.multiplicity == 0;
        if constexpr (std::is_same_v<T, KoPoint>) return x.multiplicity == 0 || x.degree < 0;
        if constexpr (std::is_same_v<T, UnknownPTorsion>) {
          if (!x.bounded) return false;
          return std::all_of(x.layer_bounds.begin(), x.layer_bounds.end(), [](const Integer& b) { return b == 0; });
        }
      },
      s);
}

// Sort key; summands with equal keys (other than unknowns) are merged.
using Key = std::tuple<std::size_t, Integer, long, std::string>;

Key key_of(const Summand& s) {
  return std::visit(
      [&](const auto& x) -> Key {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FreeZ>) return {s.index(), 0, 0, ""};
        if constexpr (std::is_same_v<T, CyclicPrimePower>) return {s.index(), x.prime, x.exponent, ""};
        if constexpr (std::is_same_v<T, PAdic> || std::is_same_v<T, Pruefer>) return {s.index(), x.prime, 0, ""};
        if constexpr (std::is_same_v<T, KOPoint> || std::is_same_v<T, KoPoint>) return {s.index(), 0, x.degree, ""};
        if constexpr (std::is_same_v<T, UnknownPTorsion>) {
          std::string k = x.tag + (x.bounded ? "|b" : "|f");
          for (const auto& b : x.layer_bounds) k += "," + b.get_str();
          return {s.index(), 0, 0, k};
        }
      },
      s);
}

void merge_into(Summand& acc, const Summand& s) {
  std::visit(
      [&](auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(s);
        if constexpr (std::is_same_v<T, FreeZ> || std::is_same_v<T, PAdic> || std::is_same_v<T, Pruefer>) {
          x.rank += y.rank;
        } else if constexpr (std::is_same_v<T, UnknownPTorsion>) {
          throw InternalError("unknown torsion summands are never merged");
        } else {
          x.multiplicity += y.multiplicity;
        }
      },
      acc);
}

std::string power_suffix(const Integer& m) { return m == 1 ? "" : "^" + m.get_str(); }

std::string render_summand(const Summand& s) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FreeZ>) return "Z" + power_suffix(x.rank);
        if constexpr (std::is_same_v<T, CyclicPrimePower>) {
          std::string base = "Z/" + x.prime.get_str() + (x.exponent == 1 ? "" : "^" + std::to_string(x.exponent));
          return x.multiplicity == 1 ? base : "(" + base + ")^" + x.multiplicity.get_str();
        }
        if constexpr (std::is_same_v<T, PAdic>) return "Zp^[" + x.prime.get_str() + "]" + power_suffix(x.rank);
        if constexpr (std::is_same_v<T, Pruefer>) return "Pruefer[" + x.prime.get_str() + "]" + power_suffix(x.rank);
        if constexpr (std::is_same_v<T, KOPoint>)
          return "KO[" + std::to_string(x.degree) + "](pt)" + power_suffix(x.multiplicity);
        if constexpr (std::is_same_v<T, KoPoint>)
          return "ko[" + std::to_string(x.degree) + "](pt)" + power_suffix(x.multiplicity);
        if constexpr (std::is_same_v<T, UnknownPTorsion>) {
          if (!x.bounded) return "T{" + x.tag + "; bounds=finite}";
          std::string b;
          for (std::size_t i = 0; i < x.layer_bounds.size(); ++i) b += (i ? "," : "") + x.layer_bounds[i].get_str();
          return "T{" + x.tag + "; bounds=[" + b + "]}";
        }
      },
      s);
}

}  // namespace

void GroupExpression::normalize() {
  for (auto& s : summands_)
    if (auto* ko = std::get_if<KOPoint>(&s)) ko->degree = mod8(ko->degree);
  std::erase_if(summands_, is_zero_summand);
  std::stable_sort(summands_.begin(), summands_.end(),
                   [](const Summand& a, const Summand& b) { return key_of(a) < key_of(b); });
  std::vector<Summand> merged;
  for (auto& s : summands_) {
    if (!merged.empty() && !std::holds_alternative<UnknownPTorsion>(s) && key_of(merged.back()) == key_of(s))
      merge_into(merged.back(), s);
    else
      merged.push_back(std::move(s));
  }
  summands_ = std::move(merged);
}

Integer GroupExpression::free_rank() const {
  Integer r = 0;
  for (const auto& s : summands_)
    if (const auto* f = std::get_if<FreeZ>(&s)) r += f->rank;
  return r;
}

bool GroupExpression::is_finitely_generated_explicit() const {
  return std::all_of(summands_.begin(), summands_.end(), [](const Summand& s) {
    return std::holds_alternative<FreeZ>(s) || std::holds_alternative<CyclicPrimePower>(s);
  });
}

std::optional<FGAbelianGroup> GroupExpression::to_group() const {
  if (!is_finitely_generated_explicit()) return std::nullopt;
  std::size_t free = 0;
  std::vector<Integer> orders;
  for (const auto& s : summands_) {
    if (const auto* f = std::get_if<FreeZ>(&s)) {
      free += f->rank.get_ui();
    } else {
      const auto& c = std::get<CyclicPrimePower>(s);
      Integer q = power_of(c.prime, c.exponent);
      for (Integer i = 0; i < c.multiplicity; ++i) orders.push_back(q);
    }
  }
  return FGAbelianGroup(free, std::move(orders));
}

bool GroupExpression::has_unknown() const {
  return std::any_of(summands_.begin(), summands_.end(),
                     [](const Summand& s) { return std::holds_alternative<UnknownPTorsion>(s); });
}

bool GroupExpression::is_torsion_free() const {
  for (const auto& s : expr_evaluate(*this).summands_)
    if (!std::holds_alternative<FreeZ>(s) && !std::holds_alternative<PAdic>(s)) return false;
  return true;
}

std::string GroupExpression::render() const {
  if (summands_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < summands_.size(); ++i) out += (i ? " (+) " : "") + render_summand(summands_[i]);
  return out;
}

GroupExpression GroupExpression::parse(const std::string& text) {
  static const std::regex free_re(R"(Z(?:\^(\d+))?)");
  static const std::regex cyclic_re(R"(Z/(\d+)(?:\^(\d+))?)");
  static const std::regex cyclic_pow_re(R"(\(Z/(\d+)(?:\^(\d+))?\)\^(\d+))");
  static const std::regex padic_re(R"(Zp\^\[(\d+)\](?:\^(\d+))?)");
  static const std::regex pruefer_re(R"(Pruefer\[(\d+)\](?:\^(\d+))?)");
  static const std::regex ko_re(R"((KO|ko)\[(-?\d+)\]\(pt\)(?:\^(\d+))?)");
  static const std::regex unknown_re(R"(T\{([^;{}]+); bounds=(?:\[([0-9,]*)\]|(finite))\})");

  GroupExpression e;
  if (text == "0") return e;
  auto opt = [](const std::ssub_match& m) { return m.matched ? Integer(m.str()) : Integer(1); };
  std::size_t start = 0;
  const std::string sep = " (+) ";
  while (true) {
    std::size_t pos = text.find(sep, start);
    std::string tok = text.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    std::smatch m;
    if (std::regex_match(tok, m, free_re)) {
      e.summands_.push_back(FreeZ{opt(m[1])});
    } else if (std::regex_match(tok, m, cyclic_re)) {
      e.summands_.push_back(CyclicPrimePower{Integer(m[1].str()), static_cast<unsigned>(opt(m[2]).get_ui()), 1});
    } else if (std::regex_match(tok, m, cyclic_pow_re)) {
      e.summands_.push_back(
          CyclicPrimePower{Integer(m[1].str()), static_cast<unsigned>(opt(m[2]).get_ui()), Integer(m[3].str())});
    } else if (std::regex_match(tok, m, padic_re)) {
      e.summands_.push_back(PAdic{Integer(m[1].str()), opt(m[2])});
    } else if (std::regex_match(tok, m, pruefer_re)) {
      e.summands_.push_back(Pruefer{Integer(m[1].str()), opt(m[2])});
    } else if (std::regex_match(tok, m, ko_re)) {
      long d = std::stol(m[2].str());
      if (m[1].str() == "KO")
        e.summands_.push_back(KOPoint{d, opt(m[3])});
      else
        e.summands_.push_back(KoPoint{d, opt(m[3])});
    } else if (std::regex_match(tok, m, unknown_re)) {
      UnknownPTorsion u{m[1].str(), {}, !m[3].matched};
      if (u.bounded && m[2].length() > 0) {
        std::stringstream ss(m[2].str());
        std::string item;
        while (std::getline(ss, item, ',')) u.layer_bounds.emplace_back(item);
      }
      e.summands_.push_back(std::move(u));
    } else {
      throw std::invalid_argument("GroupExpression::parse: unrecognized summand '" + tok + "'");
    }
    if (pos == std::string::npos) break;
    start = pos + sep.size();
  }
  e.normalize();
  return e;
}

GroupExpression expr_evaluate(const GroupExpression& e) {
  GroupExpression out;
  for (const auto& s : e.summands()) {
    long degree = 0;
    Integer mult;
    bool connective = false;
    if (const auto* ko = std::get_if<KOPoint>(&s)) {
      degree = ko->degree;
      mult = ko->multiplicity;
    } else if (const auto* kc = std::get_if<KoPoint>(&s)) {
      degree = kc->degree;
      mult = kc->multiplicity;
      connective = true;
    } else {
      out.add(s);
      continue;
    }
    FGAbelianGroup g = ko_point_table(degree, connective);
    if (g.free_rank()) out.add(FreeZ{mult});
    if (!g.torsion().empty()) out.add(CyclicPrimePower{2, 1, mult});
  }
  return out;
}

GroupExpression expr_hom_dual(const GroupExpression& e) {
  GroupExpression out;
  const GroupExpression evaluated = expr_evaluate(e);
  for (const auto& s : evaluated.summands()) {
    if (std::holds_alternative<PAdic>(s) || std::holds_alternative<Pruefer>(s))
      throw std::invalid_argument("expr_hom_dual: not finitely generated");
    if (std::holds_alternative<FreeZ>(s)) out.add(s);
  }
  return out;
}

GroupExpression expr_ext_dual(const GroupExpression& e) {
  GroupExpression out;
  const GroupExpression evaluated = expr_evaluate(e);
  for (const auto& s : evaluated.summands()) {
    if (std::holds_alternative<PAdic>(s) || std::holds_alternative<Pruefer>(s))
      throw std::invalid_argument("expr_ext_dual: not finitely generated");
    if (std::holds_alternative<CyclicPrimePower>(s) || std::holds_alternative<UnknownPTorsion>(s)) out.add(s);
  }
  return out;
}

}  // namespace crystalk
