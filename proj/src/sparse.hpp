#pragma once

// Sorted sparse integer vectors used by the elimination engines.

#include "crystalk/int_matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace crystalk::detail {

using Index = std::uint32_t;
using SparseEntry = std::pair<Index, Integer>;
using SparseVec = std::vector<SparseEntry>;

inline const Integer* find_entry(const SparseVec& v, Index col) {
  auto it = std::lower_bound(v.begin(), v.end(), col,
                             [](const SparseEntry& e, Index c) { return e.first < c; });
  if (it == v.end() || it->first != col) return nullptr;
  return &it->second;
}

// dst += c * src, dropping cancelled entries.
inline void axpy(SparseVec& dst, const Integer& c, const SparseVec& src) {
  if (c == 0 || src.empty()) return;
  SparseVec out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(std::move(dst[i++]));
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      out.emplace_back(src[j].first, c * src[j].second);
      ++j;
    } else {
      Integer v = std::move(dst[i].second);
      mpz_addmul(v.get_mpz_t(), c.get_mpz_t(), src[j].second.get_mpz_t());
      if (v != 0) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

inline SparseVec unit_vector(Index i) { return SparseVec{{i, Integer(1)}}; }

inline SparseVec sparse_row(const IntMatrix& m, std::size_t i) {
  SparseVec v;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(i, j) != 0) v.emplace_back(static_cast<Index>(j), m(i, j));
  return v;
}

inline SparseVec sparse_column(const IntMatrix& m, std::size_t j) {
  SparseVec v;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, j) != 0) v.emplace_back(static_cast<Index>(i), m(i, j));
  return v;
}

inline SparseVec sparse_from_dense(const IntVector& d) {
  SparseVec v;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) v.emplace_back(static_cast<Index>(i), d[i]);
  return v;
}

inline IntVector dense_from_sparse(const SparseVec& v, std::size_t n) {
  IntVector d(n);
  for (const auto& [i, x] : v) d[i] = x;
  return d;
}

}  // namespace crystalk::detail
