#ifndef MULTIPERM_MONOID_HPP
#define MULTIPERM_MONOID_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "multiperm/errors.hpp"
#include "multiperm/parallel.hpp"
#include "multiperm/permutation.hpp"
#include "multiperm/relation.hpp"

namespace multiperm {

/// All multipermutations on [n] in canonical order, with a membership index.
class MonoidTable {
 public:
  MonoidTable() = default;

  MonoidTable(std::size_t n, std::vector<Multipermutation> elements)
      : n_(n), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()),
                    elements_.end());
    index_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      require_same_dim(n_, elements_[i].size());
      index_.emplace(elements_[i].relation(), static_cast<std::uint32_t>(i));
    }
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Multipermutation>& elements() const noexcept {
    return elements_;
  }
  const Multipermutation& operator[](std::size_t i) const {
    return elements_[i];
  }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  std::optional<std::size_t> find(const BinaryRelation& r) const {
    auto it = index_.find(r);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const BinaryRelation& r) const { return index_.contains(r); }

 private:
  std::size_t n_ = 0;
  std::vector<Multipermutation> elements_;
  std::unordered_map<BinaryRelation, std::uint32_t> index_;
};

inline constexpr std::size_t kDefaultMonoidCap = 5;

/// |M_n| by inclusion-exclusion over empty columns:
///   sum_j (-1)^j C(n, j) (2^(n-j) - 1)^n.
inline std::uint64_t multipermutation_count(std::size_t n) {
  std::int64_t total = 0;
  std::int64_t binom = 1;
  for (std::size_t j = 0; j <= n; ++j) {
    std::int64_t nonzero_rows = (std::int64_t{1} << (n - j)) - 1;
    std::int64_t term = 1;
    for (std::size_t k = 0; k < n; ++k) term *= nonzero_rows;
    total += (j % 2 == 0 ? 1 : -1) * binom * term;
    binom = binom * static_cast<std::int64_t>(n - j) /
            static_cast<std::int64_t>(j + 1);
  }
  return static_cast<std::uint64_t>(total);
}

/// Every multipermutation on [n]: rows range over nonzero words, first row
/// outermost, so the output is already in canonical order.
inline MonoidTable enumerate_multipermutations(std::size_t n,
                                               std::size_t cap =
                                                   kDefaultMonoidCap) {
  require_cap(n, cap, "monoid dimension", "--n-cap");
  if (n == 0) throw InvalidArgument("domain size must be positive");
  const Word all = low_mask(n);
  std::vector<Multipermutation> out;
  out.reserve(static_cast<std::size_t>(multipermutation_count(n)));
  BinaryRelation cur(n);
  std::vector<Word> rows(n, 1);
  for (;;) {
    Word cover = 0;
    for (std::size_t i = 0; i < n; ++i) cover |= rows[i];
    if (cover == all) {
      for (std::size_t i = 0; i < n; ++i) cur.set_row(i, rows[i]);
      out.push_back(Multipermutation::trusted(cur));
    }
    // Odometer with the last row varying fastest.
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (rows[k] < all) {
        ++rows[k];
        break;
      }
      rows[k] = 1;
      if (k == 0) return MonoidTable(n, std::move(out));
    }
  }
}

/// The monoid generated by `gens` together with the identity: a
/// breadth-first search multiplying on the right by generators.  Sorted.
inline std::vector<Multipermutation> closure(
    std::size_t n, const std::vector<Multipermutation>& gens) {
  for (const auto& g : gens) require_same_dim(n, g.size());
  std::unordered_set<BinaryRelation> seen;
  std::vector<Multipermutation> out;
  std::vector<Multipermutation> frontier;
  auto add = [&](const Multipermutation& x) {
    if (seen.insert(x.relation()).second) {
      out.push_back(x);
      frontier.push_back(x);
    }
  };
  add(Multipermutation::identity(n));
  for (const auto& g : gens) add(g);
  while (!frontier.empty()) {
    std::vector<Multipermutation> current;
    current.swap(frontier);
    for (const auto& x : current) {
      for (const auto& g : gens) add(then(x, g));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct GenerationReport {
  bool generates = false;
  std::size_t closure_size = 0;
  std::size_t monoid_size = 0;
  /// Smallest element of M_n outside the closure, when it is proper.
  std::optional<Multipermutation> missing;
};

inline GenerationReport is_generating_set(
    const MonoidTable& table, const std::vector<Multipermutation>& gens) {
  auto cl = closure(table.n(), gens);
  GenerationReport rep;
  rep.closure_size = cl.size();
  rep.monoid_size = table.size();
  std::size_t k = 0;
  for (const auto& x : table) {
    if (k < cl.size() && cl[k] == x) {
      ++k;
    } else {
      rep.missing = x;
      break;
    }
  }
  rep.generates = !rep.missing.has_value() && cl.size() == table.size();
  return rep;
}

// ---------------------------------------------------------------------------
// Prime elements.  alpha is prime if it is not a permutation and every
// factorisation alpha = beta gamma in B_n has a permutation factor.
// ---------------------------------------------------------------------------

inline constexpr std::size_t kPrimeCap = 4;

/// Left residual beta \ alpha: the largest gamma with beta gamma <= alpha.
/// Entry (j, k) is set iff alpha(i, k) for every i with beta(i, j).
inline BinaryRelation left_residual(const BinaryRelation& beta,
                                    const BinaryRelation& alpha) {
  require_same_dim(beta.size(), alpha.size());
  const std::size_t n = beta.size();
  BinaryRelation out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Word acc = low_mask(n);
    Word col = beta.column_bits(j);
    for (; col != 0; col &= col - 1) {
      acc &= alpha.row_bits(static_cast<std::size_t>(std::countr_zero(col)));
    }
    out.set_row(j, acc);
  }
  return out;
}

/// Residual method.  Any gamma with beta gamma = alpha lies below the
/// residual, and beta (beta \ alpha) then equals alpha.  When the residual is
/// a permutation no proper subrelation can work: dropping an entry empties a
/// column of the product, but alpha has no empty column.  So alpha is not
/// prime iff some non-permutation beta has beta (beta \ alpha) = alpha with a
/// non-permutation residual.
inline bool is_prime(const BinaryRelation& alpha,
                     std::size_t cap = kPrimeCap) {
  const std::size_t n = alpha.size();
  require_cap(n, cap, "prime test dimension", "--n-cap");
  if (alpha.is_permutation()) return false;
  if (!alpha.is_multipermutation()) {
    // A zero row or column factors through a non-permutation on that side.
    return false;
  }
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  for (std::uint64_t code = 0; code < total; ++code) {
    BinaryRelation beta = BinaryRelation::unpack(n, code);
    if (beta.is_permutation()) continue;
    BinaryRelation gamma = left_residual(beta, alpha);
    if (!gamma.is_permutation() && then(beta, gamma) == alpha) return false;
  }
  return true;
}

/// Every factorisation tried explicitly; for cross-checking at n <= 3.
inline bool is_prime_naive(const BinaryRelation& alpha) {
  const std::size_t n = alpha.size();
  require_cap(n, 3, "naive prime test dimension", "--n-cap");
  if (alpha.is_permutation()) return false;
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  std::vector<BinaryRelation> nonperm;
  for (std::uint64_t code = 0; code < total; ++code) {
    auto r = BinaryRelation::unpack(n, code);
    if (!r.is_permutation()) nonperm.push_back(r);
  }
  for (const auto& b : nonperm) {
    for (const auto& c : nonperm) {
      if (then(b, c) == alpha) return false;
    }
  }
  return true;
}

/// P alpha Q for permutation matrices P, Q: rows permuted by `rows`,
/// columns by `cols`.
inline BinaryRelation permute_rows_cols(const BinaryRelation& alpha,
                                        const Permutation& rows,
                                        const Permutation& cols) {
  const std::size_t n = alpha.size();
  BinaryRelation out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (alpha.test(rows(i), cols(j))) out.set(i, j);
    }
  }
  return out;
}

/// Least element of the orbit of alpha under two-sided multiplication by
/// permutations.
inline BinaryRelation two_sided_canonical(const BinaryRelation& alpha) {
  const auto perms = all_permutations(alpha.size());
  BinaryRelation best = alpha;
  for (const auto& p : perms) {
    for (const auto& q : perms) {
      auto cand = permute_rows_cols(alpha, p, q);
      if (cand < best) best = cand;
    }
  }
  return best;
}

struct PrimeClass {
  Multipermutation representative;
  std::vector<Multipermutation> members;
};

/// All primes of M_n grouped into classes alpha ~ P alpha Q.
inline std::vector<PrimeClass> prime_elements(const MonoidTable& table,
                                              std::size_t threads = 0,
                                              std::size_t cap = kPrimeCap) {
  require_cap(table.n(), cap, "prime search dimension", "--n-cap");
  std::vector<char> prime(table.size(), 0);
  parallel_for(table.size(), threads, [&](std::size_t i) {
    prime[i] = is_prime(table[i], cap) ? 1 : 0;
  });
  std::map<BinaryRelation, PrimeClass> classes;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!prime[i]) continue;
    auto rep = two_sided_canonical(table[i]);
    auto [it, fresh] = classes.try_emplace(
        rep, PrimeClass{Multipermutation(rep), {}});
    it->second.members.push_back(table[i]);
  }
  std::vector<PrimeClass> out;
  for (auto& [rep, cls] : classes) out.push_back(std::move(cls));
  return out;
}

}  // namespace multiperm

#endif  // MULTIPERM_MONOID_HPP
