#include "crystalk/linalg.hpp"

#include "sparse.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace crystalk {

using detail::axpy;
using detail::find_entry;
using detail::Index;
using detail::SparseVec;

namespace {

// row dst -= q * row src
void row_submul(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(src, j) != 0) mpz_submul(m(dst, j).get_mpz_t(), q.get_mpz_t(), m(src, j).get_mpz_t());
}

void col_submul(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, src) != 0) mpz_submul(m(i, dst).get_mpz_t(), q.get_mpz_t(), m(i, src).get_mpz_t());
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

// Diagonalizes d in place. U and V, when given, accumulate the row and
// column operations. With enforce_chain the divisibility chain is produced
// by explicit operations; otherwise the caller refactors the diagonal.
void diagonalize(IntMatrix& d, IntMatrix* u, IntMatrix* v, bool enforce_chain) {
  const std::size_t r = d.rows(), c = d.cols();
  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    std::size_t pi = r, pj = c;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j)
        if (d(i, j) != 0 && (pi == r || cmpabs(d(i, j), d(pi, pj)) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi == r) break;
    swap_rows(d, t, pi);
    if (u) swap_rows(*u, t, pi);
    swap_cols(d, t, pj);
    if (v) swap_cols(*v, t, pj);

    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = nearest_quotient(d(i, t), d(t, t));
        row_submul(d, i, t, q);
        if (u) row_submul(*u, i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = nearest_quotient(d(t, j), d(t, t));
        col_submul(d, j, t, q);
        if (v) col_submul(*v, j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < r; ++i)
          if (d(i, t) != 0 && cmpabs(d(i, t), d(bi, bj)) < 0) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < c; ++j)
          if (d(t, j) != 0 && cmpabs(d(t, j), d(bi, bj)) < 0) {
            bi = t;
            bj = j;
          }
        if (bi != t) {
          swap_rows(d, t, bi);
          if (u) swap_rows(*u, t, bi);
        } else if (bj != t) {
          swap_cols(d, t, bj);
          if (v) swap_cols(*v, t, bj);
        }
        continue;
      }
      if (!enforce_chain) break;
      bool fixed = false;
      for (std::size_t i = t + 1; i < r && !fixed; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (!divides(d(t, t), d(i, j))) {
            row_submul(d, t, i, -1);
            if (u) row_submul(*u, t, i, -1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (d(t, t) < 0) {
      negate_row(d, t);
      if (u) negate_row(*u, t);
    }
  }
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm f{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  diagonalize(f.D, &f.U, &f.V, true);
  return f;
}

std::vector<Integer> smith_invariants(const IntMatrix& m) {
  IntMatrix d = m;
  diagonalize(d, nullptr, nullptr, false);
  std::vector<Integer> diag;
  std::size_t rank = 0;
  for (std::size_t t = 0; t < std::min(d.rows(), d.cols()); ++t) {
    if (d(t, t) == 0) continue;
    ++rank;
    if (abs_value(d(t, t)) != 1) diag.push_back(abs_value(d(t, t)));
  }
  // Refactoring into a chain may merge entries (2, 3 -> 6); the length stays the rank.
  FGAbelianGroup g(0, diag);
  std::vector<Integer> out(rank - g.torsion().size(), Integer(1));
  out.insert(out.end(), g.torsion().begin(), g.torsion().end());
  return out;
}

HermiteForm hermite_normal_form(const IntMatrix& m) {
  HermiteForm f{m, IntMatrix::identity(m.rows())};
  IntMatrix& h = f.H;
  IntMatrix& u = f.U;
  const std::size_t r = h.rows(), c = h.cols();
  std::size_t pr = 0;
  for (std::size_t j = 0; j < c && pr < r; ++j) {
    while (true) {
      std::size_t best = r;
      for (std::size_t i = pr; i < r; ++i)
        if (h(i, j) != 0 && (best == r || cmpabs(h(i, j), h(best, j)) < 0)) best = i;
      if (best == r) break;
      swap_rows(h, pr, best);
      swap_rows(u, pr, best);
      bool done = true;
      for (std::size_t i = pr + 1; i < r; ++i) {
        if (h(i, j) == 0) continue;
        Integer q = nearest_quotient(h(i, j), h(pr, j));
        row_submul(h, i, pr, q);
        row_submul(u, i, pr, q);
        if (h(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (h(pr, j) == 0) continue;
    if (h(pr, j) < 0) {
      negate_row(h, pr);
      negate_row(u, pr);
    }
    for (std::size_t i = 0; i < pr; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(pr, j).get_mpz_t());
      row_submul(h, i, pr, q);
      row_submul(u, i, pr, q);
    }
    ++pr;
  }
  return f;
}

// ---------------------------------------------------------------------------
// LatticeSolver

struct LatticeSolver::Impl {
  std::size_t ambient = 0;
  std::size_t generators = 0;
  bool track = true;
  std::vector<SparseVec> rows;       // reduced generators, over ambient coordinates
  std::vector<SparseVec> transform;  // rows[g] = sum transform[g][h] * original generator h
  std::vector<std::pair<std::size_t, Index>> pivots;
  std::vector<std::size_t> zero_rows;

  void eliminate(std::size_t target, const Integer& coef, std::size_t source) {
    axpy(rows[target], coef, rows[source]);
    if (track) axpy(transform[target], coef, transform[source]);
  }

  void run() {
    std::vector<std::size_t> active;
    for (std::size_t g = 0; g < generators; ++g)
      (rows[g].empty() ? zero_rows : active).push_back(g);
    std::vector<std::uint32_t> count(ambient);

    auto retire = [&](std::size_t pivot_row, Index col) {
      pivots.emplace_back(pivot_row, col);
      std::vector<std::size_t> next;
      for (std::size_t h : active) {
        if (h == pivot_row) continue;
        (rows[h].empty() ? zero_rows : next).push_back(h);
      }
      active = std::move(next);
    };

    while (!active.empty()) {
      std::fill(count.begin(), count.end(), 0);
      for (std::size_t g : active)
        for (const auto& e : rows[g]) ++count[e.first];

      std::size_t best_g = generators;
      Index best_c = 0;
      std::uint64_t best_cost = std::numeric_limits<std::uint64_t>::max();
      for (std::size_t g : active) {
        const std::uint64_t nnz = rows[g].size();
        for (const auto& [c, v] : rows[g]) {
          if (cmpabs(v, 1) != 0) continue;
          std::uint64_t cost = (nnz - 1) * (count[c] - 1);
          if (cost < best_cost) {
            best_cost = cost;
            best_g = g;
            best_c = c;
          }
        }
        if (best_cost == 0) break;
      }

      if (best_g != generators) {
        const Integer u = *find_entry(rows[best_g], best_c);
        for (std::size_t h : active) {
          if (h == best_g) continue;
          const Integer* a = find_entry(rows[h], best_c);
          if (!a) continue;
          Integer coef = -(*a) * u;
          eliminate(h, coef, best_g);
        }
        retire(best_g, best_c);
        continue;
      }

      // No unit entry: Euclid on the column holding the smallest entry.
      const Integer* smallest = nullptr;
      for (std::size_t g : active)
        for (const auto& [c, v] : rows[g])
          if (!smallest || cmpabs(v, *smallest) < 0 ||
              (cmpabs(v, *smallest) == 0 && count[c] < count[best_c])) {
            smallest = &v;
            best_c = c;
          }
      std::vector<std::size_t> holders;
      for (std::size_t g : active)
        if (find_entry(rows[g], best_c)) holders.push_back(g);
      while (holders.size() > 1) {
        std::size_t piv = holders[0];
        for (std::size_t g : holders)
          if (cmpabs(*find_entry(rows[g], best_c), *find_entry(rows[piv], best_c)) < 0) piv = g;
        const Integer pv = *find_entry(rows[piv], best_c);
        std::vector<std::size_t> still;
        for (std::size_t g : holders) {
          if (g == piv) continue;
          Integer q = nearest_quotient(*find_entry(rows[g], best_c), pv);
          eliminate(g, -q, piv);
          if (find_entry(rows[g], best_c)) still.push_back(g);
        }
        still.push_back(piv);
        holders = std::move(still);
      }
      retire(holders.front(), best_c);
    }
    std::sort(zero_rows.begin(), zero_rows.end());
  }
};

LatticeSolver::LatticeSolver(const IntMatrix& a, bool track_transform) : impl_(std::make_unique<Impl>()) {
  impl_->ambient = a.rows();
  impl_->generators = a.cols();
  impl_->track = track_transform;
  impl_->rows.resize(a.cols());
  if (track_transform) impl_->transform.resize(a.cols());
  for (std::size_t g = 0; g < a.cols(); ++g) {
    impl_->rows[g] = detail::sparse_column(a, g);
    if (track_transform) impl_->transform[g] = detail::unit_vector(static_cast<Index>(g));
  }
  impl_->run();
}

LatticeSolver::~LatticeSolver() = default;
LatticeSolver::LatticeSolver(LatticeSolver&&) noexcept = default;
LatticeSolver& LatticeSolver::operator=(LatticeSolver&&) noexcept = default;

std::size_t LatticeSolver::rank() const { return impl_->pivots.size(); }

std::optional<IntVector> LatticeSolver::solve(const IntVector& b) const {
  if (!impl_->track) throw std::logic_error("LatticeSolver::solve requires a tracked transform");
  if (b.size() != impl_->ambient) throw std::invalid_argument("LatticeSolver::solve: length mismatch");
  IntVector v = b;
  std::vector<std::pair<std::size_t, Integer>> coeffs;
  for (const auto& [g, c] : impl_->pivots) {
    if (v[c] == 0) continue;
    const Integer& pv = *find_entry(impl_->rows[g], c);
    if (!divides(pv, v[c])) return std::nullopt;
    Integer y;
    mpz_divexact(y.get_mpz_t(), v[c].get_mpz_t(), pv.get_mpz_t());
    for (const auto& [cc, val] : impl_->rows[g]) mpz_submul(v[cc].get_mpz_t(), y.get_mpz_t(), val.get_mpz_t());
    coeffs.emplace_back(g, std::move(y));
  }
  for (const auto& x : v)
    if (x != 0) return std::nullopt;
  IntVector x(impl_->generators);
  for (const auto& [g, y] : coeffs)
    for (const auto& [h, t] : impl_->transform[g]) mpz_addmul(x[h].get_mpz_t(), y.get_mpz_t(), t.get_mpz_t());
  return x;
}

std::optional<IntMatrix> LatticeSolver::solve_columns(const IntMatrix& targets) const {
  IntMatrix out(impl_->generators, targets.cols());
  for (std::size_t j = 0; j < targets.cols(); ++j) {
    auto x = solve(targets.column(j));
    if (!x) return std::nullopt;
    for (std::size_t i = 0; i < x->size(); ++i) out(i, j) = (*x)[i];
  }
  return out;
}

IntMatrix LatticeSolver::kernel() const {
  if (!impl_->track) throw std::logic_error("LatticeSolver::kernel requires a tracked transform");
  IntMatrix k(impl_->generators, impl_->zero_rows.size());
  for (std::size_t j = 0; j < impl_->zero_rows.size(); ++j)
    for (const auto& [h, t] : impl_->transform[impl_->zero_rows[j]]) k(h, j) = t;
  return k;
}

IntMatrix kernel_basis(const IntMatrix& m) { return LatticeSolver(m).kernel(); }

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) { return LatticeSolver(a).solve(b); }

std::size_t rational_rank(const IntMatrix& m) { return LatticeSolver(m, false).rank(); }

// ---------------------------------------------------------------------------
// Cokernel: unit pivots remove a generator together with a coordinate;
// the residual core goes through the dense reduction.

FGAbelianGroup cokernel_structure(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  std::vector<SparseVec> gens(c);
  std::vector<std::uint32_t> count(r, 0);
  std::vector<std::vector<std::uint32_t>> where(r);
  for (std::size_t g = 0; g < c; ++g) {
    gens[g] = detail::sparse_column(m, g);
    for (const auto& e : gens[g]) {
      ++count[e.first];
      where[e.first].push_back(static_cast<std::uint32_t>(g));
    }
  }
  std::vector<char> coord_alive(r, 1), gen_alive(c, 1);

  while (true) {
    std::size_t best_g = c;
    Index best_i = 0;
    std::uint64_t best_cost = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t g = 0; g < c && best_cost > 0; ++g) {
      if (!gen_alive[g] || gens[g].empty()) continue;
      const std::uint64_t nnz = gens[g].size();
      for (const auto& [i, v] : gens[g]) {
        if (cmpabs(v, 1) != 0) continue;
        std::uint64_t cost = (nnz - 1) * (count[i] - 1);
        if (cost < best_cost) {
          best_cost = cost;
          best_g = g;
          best_i = i;
        }
      }
    }
    if (best_g == c) break;

    const Integer s = *find_entry(gens[best_g], best_i);
    const std::vector<std::uint32_t> holders = where[best_i];
    for (std::uint32_t h : holders) {
      if (h == best_g || !gen_alive[h]) continue;
      const Integer* a = find_entry(gens[h], best_i);
      if (!a) continue;
      Integer coef = -(*a) * s;
      SparseVec before = gens[h];
      axpy(gens[h], coef, gens[best_g]);
      for (const auto& e : before) --count[e.first];
      for (const auto& e : gens[h]) {
        ++count[e.first];
        if (!find_entry(before, e.first)) where[e.first].push_back(h);
      }
    }
    gen_alive[best_g] = 0;
    for (const auto& e : gens[best_g]) --count[e.first];
    coord_alive[best_i] = 0;
    where[best_i].clear();
  }

  std::vector<std::size_t> coord_pos(r, r);
  std::size_t live_coords = 0;
  for (std::size_t i = 0; i < r; ++i)
    if (coord_alive[i]) coord_pos[i] = live_coords++;
  std::vector<std::size_t> live_gens;
  for (std::size_t g = 0; g < c; ++g)
    if (gen_alive[g] && !gens[g].empty()) live_gens.push_back(g);

  IntMatrix core(live_coords, live_gens.size());
  for (std::size_t j = 0; j < live_gens.size(); ++j)
    for (const auto& [i, v] : gens[live_gens[j]]) {
      if (coord_pos[i] == r) throw InternalError("cokernel_structure: eliminated coordinate still referenced");
      core(coord_pos[i], j) = v;
    }
  std::vector<Integer> inv = smith_invariants(core);
  return FGAbelianGroup(live_coords - inv.size(), inv);
}

}  // namespace crystalk
