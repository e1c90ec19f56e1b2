#ifndef MULTIPERM_GREEN_HPP
#define MULTIPERM_GREEN_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "multiperm/errors.hpp"
#include "multiperm/monoid.hpp"
#include "multiperm/relation.hpp"

// Green's relations on M_n.
//
// Row side:    alpha L beta  iff  <R(alpha)> = <R(beta)>
// Column side: alpha R beta  iff  <C(alpha)> = <C(beta)>
//
// where <R(alpha)> is the set of nonzero boolean sums of rows of alpha that
// lie below at least one row of alpha.  The oracles decide the same
// relations by searching M_n for multipliers.

namespace multiperm {

/// A set of boolean vectors closed under OR and containing 0, stored as
/// sorted words.
struct RowSpace {
  std::size_t n = 0;
  std::vector<Word> vectors;

  bool contains(Word v) const {
    return std::binary_search(vectors.begin(), vectors.end(), v);
  }
  std::vector<BoolVec> as_vectors() const {
    std::vector<BoolVec> out;
    for (Word w : vectors) out.emplace_back(n, w);
    return out;
  }
  friend bool operator==(const RowSpace&, const RowSpace&) = default;
};

/// All sums of a set of generators, including the empty sum.
inline std::vector<Word> span_of(std::span<const Word> gens) {
  std::set<Word> acc{0};
  for (Word g : gens) {
    std::vector<Word> cur(acc.begin(), acc.end());
    for (Word v : cur) acc.insert(v | g);
  }
  return {acc.begin(), acc.end()};
}

inline std::vector<Word> row_words(const BinaryRelation& a) {
  return {a.rows().begin(), a.rows().end()};
}

inline std::vector<Word> column_words(const BinaryRelation& a) {
  std::vector<Word> out;
  for (std::size_t j = 0; j < a.size(); ++j) out.push_back(a.column_bits(j));
  return out;
}

/// V(alpha).
inline RowSpace row_space(const BinaryRelation& alpha) {
  return {alpha.size(), span_of(row_words(alpha))};
}

/// W(alpha).
inline RowSpace col_space(const BinaryRelation& alpha) {
  return {alpha.size(), span_of(column_words(alpha))};
}

namespace detail {

inline std::vector<Word> bounded(std::span<const Word> gens) {
  std::vector<Word> out;
  for (Word v : span_of(gens)) {
    if (v == 0) continue;
    if (std::any_of(gens.begin(), gens.end(),
                    [v](Word g) { return leq(v, g); })) {
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace detail

/// <R(alpha)>: nonzero row-space vectors below some row of alpha.
inline std::vector<Word> bounded_span(const BinaryRelation& alpha) {
  return detail::bounded(row_words(alpha));
}

/// <C(alpha)>.
inline std::vector<Word> bounded_col_span(const BinaryRelation& alpha) {
  return detail::bounded(column_words(alpha));
}

inline bool green_L(const BinaryRelation& a, const BinaryRelation& b) {
  require_same_dim(a.size(), b.size());
  return bounded_span(a) == bounded_span(b);
}

inline bool green_R(const BinaryRelation& a, const BinaryRelation& b) {
  require_same_dim(a.size(), b.size());
  return bounded_col_span(a) == bounded_col_span(b);
}

inline bool green_H(const BinaryRelation& a, const BinaryRelation& b) {
  return green_L(a, b) && green_R(a, b);
}

/// D = L o R, with the intermediate element drawn from `table`.
inline bool green_D(const BinaryRelation& a, const BinaryRelation& b,
                    const MonoidTable& table) {
  require_same_dim(a.size(), b.size());
  auto la = bounded_span(a);
  auto rb = bounded_col_span(b);
  for (const auto& g : table) {
    if (bounded_span(g) == la && bounded_col_span(g) == rb) return true;
  }
  return false;
}

// --- search oracles --------------------------------------------------------

/// Some rho in `table` with rho alpha = beta.
inline bool left_divides(const BinaryRelation& alpha,
                         const BinaryRelation& beta,
                         const MonoidTable& table) {
  for (const auto& rho : table) {
    if (then(rho.relation(), alpha) == beta) return true;
  }
  return false;
}

/// Some rho in `table` with alpha rho = beta.
inline bool right_divides(const BinaryRelation& alpha,
                          const BinaryRelation& beta,
                          const MonoidTable& table) {
  for (const auto& rho : table) {
    if (then(alpha, rho.relation()) == beta) return true;
  }
  return false;
}

inline bool green_L_oracle(const BinaryRelation& a, const BinaryRelation& b,
                           const MonoidTable& table) {
  return left_divides(a, b, table) && left_divides(b, a, table);
}

inline bool green_R_oracle(const BinaryRelation& a, const BinaryRelation& b,
                           const MonoidTable& table) {
  return right_divides(a, b, table) && right_divides(b, a, table);
}

inline bool green_H_oracle(const BinaryRelation& a, const BinaryRelation& b,
                           const MonoidTable& table) {
  return green_L_oracle(a, b, table) && green_R_oracle(a, b, table);
}

inline bool green_D_oracle(const BinaryRelation& a, const BinaryRelation& b,
                           const MonoidTable& table) {
  for (const auto& g : table) {
    if (green_L_oracle(a, g, table) && green_R_oracle(g, b, table)) {
      return true;
    }
  }
  return false;
}

// --- batch classification --------------------------------------------------

/// Class ids per element of a MonoidTable (same indexing).  Ids are
/// assigned in canonical element order.
struct GreenClassification {
  std::size_t n = 0;
  std::vector<std::size_t> L, R, H, D;
  std::size_t l_count = 0, r_count = 0, h_count = 0, d_count = 0;

  /// Element indices grouped by class id.
  static std::vector<std::vector<std::size_t>> groups(
      const std::vector<std::size_t>& ids, std::size_t count) {
    std::vector<std::vector<std::size_t>> out(count);
    for (std::size_t i = 0; i < ids.size(); ++i) out[ids[i]].push_back(i);
    return out;
  }
};

/// One D-class of the eggbox: its R-rows, L-columns and H-class size.
struct EggboxSummary {
  std::size_t d_class = 0;
  std::size_t size = 0;
  std::size_t r_classes = 0;
  std::size_t l_classes = 0;
  std::size_t h_size = 0;
};

namespace detail {

template <typename Key>
std::vector<std::size_t> ids_by_key(const std::vector<Key>& keys,
                                    std::size_t& count) {
  std::map<Key, std::size_t> seen;
  std::vector<std::size_t> ids(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto [it, fresh] = seen.try_emplace(keys[i], seen.size());
    ids[i] = it->second;
  }
  count = seen.size();
  return ids;
}

}  // namespace detail

inline constexpr std::size_t kGreenCap = 4;

inline GreenClassification classify(const MonoidTable& table,
                                     std::size_t cap = kGreenCap) {
  require_cap(table.n(), cap, "Green classification dimension", "--n-cap");
  GreenClassification g;
  g.n = table.n();
  std::vector<std::vector<Word>> lkeys, rkeys;
  std::vector<std::pair<std::vector<Word>, std::vector<Word>>> hkeys;
  lkeys.reserve(table.size());
  rkeys.reserve(table.size());
  for (const auto& a : table) {
    lkeys.push_back(bounded_span(a));
    rkeys.push_back(bounded_col_span(a));
    hkeys.emplace_back(lkeys.back(), rkeys.back());
  }
  g.L = detail::ids_by_key(lkeys, g.l_count);
  g.R = detail::ids_by_key(rkeys, g.r_count);
  g.H = detail::ids_by_key(hkeys, g.h_count);

  // D is the join of L and R: union-find over L-ids and R-ids.
  std::vector<std::size_t> parent(g.l_count + g.r_count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < table.size(); ++i) {
    auto a = find(g.L[i]);
    auto b = find(g.l_count + g.R[i]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> roots(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) roots[i] = find(g.L[i]);
  g.D = detail::ids_by_key(roots, g.d_count);
  return g;
}

inline std::vector<EggboxSummary> eggbox(const GreenClassification& g) {
  std::vector<EggboxSummary> out(g.d_count);
  std::vector<std::set<std::size_t>> ls(g.d_count), rs(g.d_count);
  std::vector<std::size_t> hsize(g.h_count, 0);
  for (std::size_t i = 0; i < g.D.size(); ++i) {
    auto d = g.D[i];
    out[d].d_class = d;
    ++out[d].size;
    ls[d].insert(g.L[i]);
    rs[d].insert(g.R[i]);
    ++hsize[g.H[i]];
  }
  for (std::size_t i = 0; i < g.D.size(); ++i) {
    out[g.D[i]].h_size = hsize[g.H[i]];
  }
  for (std::size_t d = 0; d < g.d_count; ++d) {
    out[d].l_classes = ls[d].size();
    out[d].r_classes = rs[d].size();
  }
  return out;
}

}  // namespace multiperm

#endif  // MULTIPERM_GREEN_HPP
